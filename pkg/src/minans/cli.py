"""Command line entry point: ``minans <subcommand> FILE ...``."""

from __future__ import annotations

import argparse
import json
import os
import sys
import warnings

from minans import compile as comp_mod
from minans import oracle
from minans.core import LiteralSet, bits, load_database
from minans.covers import INT_TOTAL, PLAIN, TOTAL, CoverGoal, CoverSearch, constructible_extensions
from minans.engine import COMPILED, DIRECT, minimal_answers
from minans.errors import IoError, MinansError, ParseError, SemanticError, StaleCompilationWarning
from minans.transform import transform
from minans.trees import TreeSource, partial_source


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(1)


def _load(path):
    try:
        return load_database(path)
    except OSError as exc:
        raise IoError(f"{path}: {exc.strerror or exc}") from exc
    except (ParseError, SemanticError) as exc:
        exc.args = (f"{path}:{exc.args[0]}",) if exc.line is not None else (f"{path}: {exc.args[0]}",)
        raise


def _dump(obj, out):
    out.write(json.dumps(obj, sort_keys=True) + "\n")


def _query_mask(db, text):
    if not text:
        return None
    names = [t.strip() for t in text.split(",") if t.strip()]
    for n in names:
        if not db.lang.has(n):
            raise SemanticError(f"unknown atom in query: {n}")
    return db.lang.mask(names)


def _models_out(db, ms, args, out):
    named = ms.named(db.lang)
    if args.json:
        _dump({"models": named}, out)
    else:
        for m in named:
            out.write(" ".join(m) + "\n")


def _answers_out(db, answers, complete, args, out):
    named = [db.lang.atom_names(m) for m in answers]
    if args.json:
        _dump({"answers": named, "complete": complete}, out)
    else:
        for a in named:
            out.write(" | ".join(a) + "\n")


# -- subcommands -------------------------------------------------------------

def cmd_check(args, out):
    db = _load(args.file)
    lang = db.lang
    atoms = lang.atom_names(lang.strip(lang.full))
    out.write(f"atoms: {len(atoms)}\n")
    out.write(f"rules: {sum(1 for r in db.rules if not (r.body_free and r.conseq == lang.aux_mask))}\n")
    if db.stratified:
        out.write("stratified\n")
    else:
        out.write("not stratified; direct mode requires --allow-total\n")
    if lang.partitioned:
        ext = lang.atom_names(lang.strip(lang.ext))
        out.write(f"partitioned: {len(ext)} extensional, {len(atoms) - len(ext)} intensional\n")
    else:
        out.write("no extensional partition\n")
    return 0


def cmd_stable_models(args, out):
    db = _load(args.file)
    search = CoverSearch(db)
    models = [db.lang.strip(c.neg) for c in search.extensions(LiteralSet(), TOTAL)]
    _models_out(db, oracle.ModelSet.of(models), args, out)
    return 0


def _compiled_base(db, args):
    if not args.comp:
        return comp_mod.compile_db(db)
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", StaleCompilationWarning)
        base = comp_mod.load(args.comp, db)
    if not base.fresh:
        if args.strict:
            raise comp_mod.StaleCompilation(f"{args.comp}: compiled base is stale")
        for w in caught:
            sys.stderr.write(f"minans: warning: {w.message}\n")
        base = comp_mod.compile_db(db)
    return base


def cmd_minimal_answers(args, out):
    db = _load(args.file)
    query = _query_mask(db, args.query)
    if args.mode == COMPILED:
        base = _compiled_base(db, args)
        res = minimal_answers(db, COMPILED, query=query, limit=args.limit, comp=base)
    else:
        res = minimal_answers(db, DIRECT, query=query, limit=args.limit, allow_total=args.allow_total)
    _answers_out(db, res.answers, res.exhausted, args, out)
    return 0


def cmd_compile(args, out):
    db = _load(args.file)
    base = comp_mod.compile_db(db)
    comp_mod.save(base, args.output)
    out.write(f"{len(base.covers)} covers written to {args.output}\n")
    return 0


def cmd_covers(args, out):
    db = _load(args.file)
    goal = LiteralSet.parse(args.goal or "", db.lang)
    mode = TOTAL if args.total else INT_TOTAL if args.int_total else PLAIN
    if mode == INT_TOTAL and not db.lang.partitioned:
        raise SemanticError("--int-total needs an extensional/intensional partition")
    found = list(constructible_extensions(CoverGoal(goal, mode), db, args.minimal_only, args.limit))
    if args.json:
        _dump({"covers": [c.to_json(db.lang) for c in found]}, out)
    else:
        for c in found:
            out.write(c.format(db.lang) + "\n")
    return 0


def cmd_trees(args, out):
    db = _load(args.file)
    lang = db.lang
    source = partial_source(db) if args.partial else TreeSource(db)
    if args.atom:
        ids = [lang.id(a) for a in args.atom]
    elif args.partial:
        ids = list(bits(lang.int_mask & ~lang.aux_mask))
    else:
        ids = list(bits(lang.strip(lang.full)))
    result = {}
    for p in ids:
        result[lang.names[p]] = [t.s for t in source.trees(p)]
    if args.json:
        _dump({"trees": {k: [s.to_json(lang) for s in v] for k, v in result.items()}}, out)
    else:
        for name, ss in result.items():
            for s in ss:
                out.write(f"{name}: {s.format(lang)}\n")
    return 0


def cmd_transform(args, out):
    db = _load(args.file)
    text = transform(db).text()
    if args.output:
        try:
            with open(args.output, "w", encoding="utf-8") as fh:
                fh.write(text)
        except OSError as exc:
            raise IoError(str(exc)) from exc
    else:
        out.write(text)
    return 0


def cmd_oracle(args, out):
    if args.bound is not None:
        os.environ["MINANS_ORACLE_BOUND"] = str(args.bound)
    db = _load(args.file)
    sub = args.oracle_cmd
    if sub == "minimal-answers":
        query = _query_mask(db, args.query)
        _answers_out(db, oracle.minimal_answers_bf(db, query), True, args, out)
        return 0
    fn = {"stable-models": oracle.stable_models, "minimal-models": oracle.minimal_models,
          "perfect-models": oracle.perfect_models, "models": oracle.models}[sub]
    _models_out(db, fn(db), args, out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="minans", description="Minimal answers of disjunctive deductive databases.")
    sub = p.add_subparsers(dest="cmd", required=True, parser_class=_Parser)

    def add(name, fn, help):
        s = sub.add_parser(name, help=help)
        s.add_argument("file")
        s.set_defaults(fn=fn)
        return s

    add("check", cmd_check, "parse and report stratification and partition")
    s = add("stable-models", cmd_stable_models, "list stable models via total cyclic covers")
    s.add_argument("--json", action="store_true")
    s = add("minimal-answers", cmd_minimal_answers, "enumerate minimal answers")
    s.add_argument("--mode", choices=[DIRECT, COMPILED], default=DIRECT)
    s.add_argument("--comp", help="compiled base produced by `compile`")
    s.add_argument("--query", help="comma separated atoms restricting the answers")
    s.add_argument("--allow-total", action="store_true", help="total covers for unstratified input")
    s.add_argument("--limit", type=int)
    s.add_argument("--strict", action="store_true", help="fail on a stale compiled base")
    s.add_argument("--json", action="store_true")
    s = add("compile", cmd_compile, "compile the intensional rules")
    s.add_argument("-o", "--output", required=True)
    s = add("covers", cmd_covers, "constructible extensions of a goal")
    s.add_argument("--goal", default="")
    g = s.add_mutually_exclusive_group()
    g.add_argument("--total", action="store_true")
    g.add_argument("--int-total", action="store_true")
    s.add_argument("--minimal-only", action="store_true")
    s.add_argument("--limit", type=int)
    s.add_argument("--json", action="store_true")
    s = add("trees", cmd_trees, "S-sets of cyclic trees")
    s.add_argument("--partial", action="store_true", help="partial trees over INT(T)")
    s.add_argument("--atom", action="append")
    s.add_argument("--json", action="store_true")
    s = add("transform", cmd_transform, "positive transformation T*")
    s.add_argument("-o", "--output")

    o = sub.add_parser("oracle", help="brute-force reference semantics")
    o.add_argument("oracle_cmd", choices=["models", "minimal-models", "stable-models",
                                          "perfect-models", "minimal-answers"])
    o.add_argument("file")
    o.add_argument("--query")
    o.add_argument("--bound", type=int, help="override MINANS_ORACLE_BOUND")
    o.add_argument("--json", action="store_true")
    o.set_defaults(fn=cmd_oracle)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 1
    try:
        return args.fn(args, sys.stdout)
    except MinansError as exc:
        sys.stderr.write(f"minans: {type(exc).__name__}: {exc}\n")
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
