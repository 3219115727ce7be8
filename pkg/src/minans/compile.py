"""Compilation of the intensional rules into a set of int-total covers.

COMP holds the ⊆-minimal int-total weakly cyclic covers of INT(T).  At run
time, covers of a goal are obtained from COMP by completing each member
against the extensional rules, which only needs subset checks on rule heads.
"""

from __future__ import annotations

import hashlib
import json
import warnings
from dataclasses import dataclass, field
from typing import Iterator, Optional

from minans.core import Database, Language, LiteralSet, bits, canonical, format_rule
from minans.covers import INT_TOTAL, CoverSearch
from minans.errors import (FormatError, IoError, NoCompletion, PartitionRequired,
                           StaleCompilation, StaleCompilationWarning)
from minans.trees import partial_source

VERSION = 1


def _heads(ext) -> list:
    if isinstance(ext, Database):
        return [r.conseq for r in ext.ext_rules()]
    return [r.conseq if hasattr(r, "conseq") else r for r in ext]


def ext_entails(ext, f: int) -> bool:
    """EXT(T) ⊨ ⋁F, i.e. some extensional rule head lies inside F."""
    return any(h & ~f == 0 for h in _heads(ext))


def weak_search(db: Database) -> CoverSearch:
    """Cover search for weakly cyclic covers: strong in INT(T), cyclic via partial trees."""
    if not db.lang.partitioned:
        raise PartitionRequired("compilation needs an extensional/intensional partition")
    return CoverSearch(db, partial_source(db), db.int_rules())


def fingerprint(db: Database) -> str:
    lang = db.lang
    h = hashlib.sha256()
    h.update(("atoms:" + ",".join(lang.names) + "\n").encode())
    h.update(("ext:" + ",".join(lang.atom_names(lang.ext)) + "\n").encode())
    for r in db.int_rules():
        h.update((format_rule(r, lang) + "\n").encode())
    return h.hexdigest()


@dataclass
class CompiledBase:
    covers: tuple
    fingerprint: str
    lang: Language
    fresh: bool = field(default=True, compare=False)

    def to_json(self) -> dict:
        lang = self.lang
        return {
            "version": VERSION,
            "fingerprint": self.fingerprint,
            "language": list(lang.names),
            "ext": lang.atom_names(lang.ext),
            "covers": [{"pos": lang.atom_names(c.pos), "neg": lang.atom_names(c.neg)}
                       for c in self.covers],
        }

    def check(self, db: Database) -> bool:
        return self.fingerprint == fingerprint(db)


def compile_db(db: Database) -> CompiledBase:
    search = weak_search(db)
    covers = tuple(search.extensions(LiteralSet(), INT_TOTAL, minimal_only=True))
    return CompiledBase(covers, fingerprint(db), db.lang)


def save(base: CompiledBase, path) -> None:
    text = json.dumps(base.to_json(), sort_keys=True, indent=1) + "\n"
    try:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    except OSError as exc:
        raise IoError(str(exc)) from exc


def load(path, db: Optional[Database] = None) -> CompiledBase:
    """Read a COMP file; when `db` is given, mark the result stale on mismatch."""
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except OSError as exc:
        raise IoError(str(exc)) from exc
    except json.JSONDecodeError as exc:
        raise FormatError(f"not a COMP file: {exc}") from exc
    try:
        if data["version"] != VERSION:
            raise FormatError(f"unsupported COMP version {data['version']}")
        names = tuple(data["language"])
        tmp = Language(names)
        lang = Language(names, tmp.mask(data["ext"]))
        covers = tuple(LiteralSet(lang.mask(c["pos"]), lang.mask(c["neg"])) for c in data["covers"])
        base = CompiledBase(covers, data["fingerprint"], lang)
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed COMP file: {exc}") from exc
    if db is not None:
        base.fresh = base.check(db) and db.lang == lang
        if not base.fresh:
            warnings.warn("compiled base does not match INT(T); recompile", StaleCompilationWarning)
    return base


def completions(c: LiteralSet, ext, lang: Language) -> Iterator[LiteralSet]:
    """All completions of `c`: every true extensional atom gets a supporting rule."""
    heads = _heads(ext)
    negs = c.neg & lang.ext
    todo = list(bits(negs))
    seen = set()

    def walk(k, added):
        if k == len(todo):
            d = LiteralSet(c.pos | added, c.neg)
            if d not in seen:
                seen.add(d)
                yield d
            return
        p = todo[k]
        for h in heads:
            if h >> p & 1 and not (h & ~(1 << p)) & negs:
                yield from walk(k + 1, added | (h & ~(1 << p)))

    yield from walk(0, 0)


def completions_checked(c: LiteralSet, ext, lang: Language) -> list:
    out = list(completions(c, ext, lang))
    if not out and c.neg & lang.ext:
        raise NoCompletion("some true extensional atom has no eligible rule")
    return out


class CompQuery:
    """Run-time cover queries against a compiled base, memoized per session."""

    def __init__(self, base: CompiledBase, db: Database):
        if not base.check(db) or base.lang != db.lang:
            raise StaleCompilation("compiled base does not match INT(T)")
        self.base = base
        self.db = db
        self.lang = db.lang
        self.heads = _heads(db)
        self._cache = {}

    def ext_entails(self, f: int) -> bool:
        return any(h & ~f == 0 for h in self.heads)

    def query(self, q: LiteralSet) -> tuple:
        """COMP(Q) in canonical order."""
        key = (q.pos, q.neg)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        ext = self.lang.ext
        q_int = q.restricted(~ext)
        q_ext = q.restricted(ext)
        out = set()
        for c in self.base.covers:
            if not q_int <= c:
                continue
            cq = c | q_ext
            if not cq.consistent():
                continue
            for d in completions(cq, self.heads, self.lang):
                if not self.ext_entails(d.pos & ext):
                    out.add(d)
        res = tuple(canonical(out))
        self._cache[key] = res
        return res

    def first(self, q: LiteralSet) -> Optional[LiteralSet]:
        found = self.query(q)
        return found[0] if found else None


def comp_query(base: CompiledBase, q: LiteralSet, db: Database) -> tuple:
    return CompQuery(base, db).query(q)
