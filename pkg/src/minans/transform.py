"""Rewriting a database into an equivalent positive one over a larger language.

Every cyclic tree 𝒯 for an atom P gets a fresh atom Q_𝒯 meaning "the tree is
blocked" (some atom of O(𝒯) ∪ N(𝒯) holds).  φ(P) is the conjunction of the
Q-atoms of P's trees, so ¬P may be replaced by φ(P) in rule bodies.  The
stable models of T are then read off the minimal models of T* ∧ ¬FALSE.
"""

from __future__ import annotations

from dataclasses import dataclass

from minans.core import FALSE, Atom, Database, Language, Rule, bits, format_rule, mask_key
from minans.errors import Inconsistent, TrivialDatabase
from minans.trees import TreeSource

Q_PREFIX = "__q_"


@dataclass(frozen=True)
class TransformResult:
    tstar: Database
    tprime: Database
    source: Database
    tree_atoms: dict  # source atom id -> tuple of Q-atom ids in L*
    trees: dict  # Q-atom id -> (source atom id, TreeSummary)
    phi: dict  # source atom id -> mask over L*
    false_atom: Atom

    @property
    def lang(self) -> Language:
        return self.tstar.lang

    @property
    def base_mask(self) -> int:
        return self.source.lang.full

    def text(self) -> str:
        """T* in the rule text format, preceded by a comment per Q-atom."""
        src = self.source.lang
        lang = self.lang
        lines = []
        for q, (p, t) in sorted(self.trees.items()):
            lines.append(f"% {lang.names[q]}: tree for {src.names[p]}, S = {{{t.s.format(src, strip_aux=False)}}}")
        lines.extend(format_rule(r, lang) for r in self.tstar.rules)
        return "\n".join(lines) + "\n"


def transform(db: Database) -> TransformResult:
    if not any(r.antec == 0 for r in db.rules):
        raise TrivialDatabase("no rule has an empty positive body; the only stable model is empty")
    src = db.lang
    n = len(src)
    source = TreeSource(db)
    names = list(src.names)
    tree_atoms = {}
    trees = {}
    for p in range(n):
        ids = []
        for k, t in enumerate(source.trees(p)):
            ids.append(len(names))
            trees[len(names)] = (p, t)
            names.append(f"{Q_PREFIX}{src.names[p]}_{k}")
        tree_atoms[p] = tuple(ids)
    false_id = len(names)
    names.append(FALSE)
    lang = Language(tuple(names))
    fbit = 1 << false_id
    phi = {p: sum(1 << q for q in ids) for p, ids in tree_atoms.items()}

    rules = []
    for r in db.rules:
        body = r.antec
        for b in bits(r.negbody):
            body |= phi[b]
        rules.append(Rule(body, 0, r.conseq | fbit, r.origin))
    for q, (p, _) in trees.items():
        rules.append(Rule(0, 0, (1 << p) | (1 << q)))
    tprime = []
    for p in range(n):
        tprime.append(Rule((1 << p) | phi[p], 0, fbit))
    for q, (_, t) in trees.items():
        for a in bits(t.out | t.negs):
            tprime.append(Rule(1 << a, 0, 1 << q))
    tstar = Database(lang, tuple(rules + tprime))
    return TransformResult(tstar, Database(lang, tuple(tprime)), db, tree_atoms, trees, phi,
                           Atom(false_id, FALSE))


def cl(n: int, tprime: Database) -> int:
    """Least model of the definite database `tprime` containing `n`."""
    m = n
    changed = True
    while changed:
        changed = False
        for r in tprime.rules:
            if r.antec & ~m == 0 and r.conseq & ~m:
                m |= r.conseq
                changed = True
    return m


def answers_via_transform(db: Database, result: TransformResult = None) -> list:
    """Minimal answers of `db`, computed as minimal answers {FALSE} ∪ A of T*."""
    from minans.engine import minimal_answers

    res = result or transform(db)
    fbit = 1 << res.false_atom.id
    query = db.lang.strip(res.base_mask) | fbit
    stream = minimal_answers(res.tstar, query=query)
    out = [m & ~fbit for m in stream.answers if m & fbit]
    if 0 in out:
        raise Inconsistent("T* entails FALSE: the database has no stable model")
    return sorted(out, key=mask_key)
