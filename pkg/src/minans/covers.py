"""Strong covers, cyclicity, and the constructible-extension search.

The search starts from a seed literal set and repeatedly repairs the first
violated rule, either by adding a positive body atom or by grafting the S-set
of a cyclic tree for a negated body atom.  In total and int-total mode the
denial rules ``P ∧ ¬P → FALSE`` are checked after the real rules without ever
being materialized: every unvalued atom in scope counts as a violation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional

from minans import kernels
from minans.core import Database, LiteralSet, bits, canonical, is_strong_cover_rules, reduce
from minans.errors import NotCyclic, NotCyclicSeed, NotStrongCover
from minans.trees import TreeSource

PLAIN, TOTAL, INT_TOTAL = "plain", "total", "int_total"


@dataclass(frozen=True)
class CoverGoal:
    seed: LiteralSet
    mode: str = PLAIN


def is_strong_cover(c: LiteralSet, db: Database) -> bool:
    return c.consistent() and is_strong_cover_rules(c, db.rules)


class CoverSearch:
    """Constructible extensions over a fixed rule table and tree source.

    `db` supplies the rules of the strong-cover test; `trees` supplies cyclic
    trees (these differ for weakly cyclic covers, where the trees come from
    INT(T) plus unit facts).
    """

    def __init__(self, db: Database, trees: Optional[TreeSource] = None, rules=None):
        self.db = db
        self.lang = db.lang
        self.rules = list(db.rules if rules is None else rules)
        self.table = kernels.make_table(
            [r.antec for r in self.rules],
            [r.negbody for r in self.rules],
            [r.conseq for r in self.rules],
            len(db.lang),
        )
        self.trees = trees or TreeSource(db)
        self.calls = 0

    def scope(self, mode: str) -> int:
        if mode == TOTAL:
            return self.lang.full
        if mode == INT_TOTAL:
            return self.lang.int_mask
        return 0

    # -- predicates ---------------------------------------------------------

    def is_strong(self, c: LiteralSet) -> bool:
        return c.consistent() and self.table.first_violated(c.pos, c.neg, 0) < 0

    def unjustified(self, c: LiteralSet) -> int:
        """Negated atoms of `c` that no tree inside `c` accounts for."""
        bad = 0
        for p in bits(c.neg):
            if not any(t.s <= c for t in self.trees.trees(p)):
                bad |= 1 << p
        return bad

    def is_cyclic(self, c: LiteralSet) -> bool:
        return c.consistent() and not self.unjustified(c)

    # -- search -------------------------------------------------------------

    def extensions(self, seed: LiteralSet, mode: str = PLAIN, minimal_only: bool = False,
                   limit: Optional[int] = None, scope: Optional[int] = None) -> Iterator[LiteralSet]:
        """Yield constructible extensions of `seed`.

        Every cyclic strong cover containing `seed` (and total over the mode's
        scope) contains some yielded cover.
        """
        self.calls += 1
        if not seed.consistent():
            return
        if minimal_only:
            found = list(self._search(seed, mode, scope))
            keep = []
            for c in sorted(found, key=len):
                if not any(k <= c for k in keep):
                    keep.append(c)
            keep = canonical(keep)
            yield from keep[:limit] if limit is not None else keep
            return
        n = 0
        for c in self._search(seed, mode, scope):
            yield c
            n += 1
            if limit is not None and n >= limit:
                return

    def first(self, seed: LiteralSet, mode: str = PLAIN) -> Optional[LiteralSet]:
        for c in self._search(seed, mode):
            return c
        return None

    def _search(self, seed, mode, scope=None):
        if scope is None:
            scope = self.scope(mode)
        table = self.table
        trees = self.trees
        visited = set()
        emitted = set()
        # (literal set, still justifying seed negations?)
        stack = [(seed, True)]
        while stack:
            q, justifying = stack.pop()
            key = (q.pos, q.neg)
            if key in visited:
                continue
            visited.add(key)
            if justifying:
                # graft trees for unexplained seed negations, lowest atom first
                bad = self._first_unjustified(q)
                if bad >= 0:
                    kids = [(q | t.s, True) for t in trees.trees(bad, q)]
                    stack.extend(reversed(kids))
                    continue
            i = table.first_violated(q.pos, q.neg, 0)
            if i >= 0:
                r = self.rules[i]
                kids = [LiteralSet(q.pos | 1 << a, q.neg) for a in bits(r.antec & ~q.neg)]
                for b in bits(r.negbody):
                    kids.extend(q | t.s for t in trees.trees(b, q))
                stack.extend((k, False) for k in reversed(kids))
                continue
            free = scope & ~q.atoms
            if free:
                p = (free & -free).bit_length() - 1
                kids = [LiteralSet(q.pos | 1 << p, q.neg)]
                kids.extend(q | t.s for t in trees.trees(p, q))
                stack.extend((k, False) for k in reversed(kids))
                continue
            if key not in emitted:
                emitted.add(key)
                yield q

    def _first_unjustified(self, q):
        for p in bits(q.neg):
            if not any(t.s <= q for t in self.trees.trees(p)):
                return p
        return -1

    def has_cover(self, q: LiteralSet, mode: str = PLAIN) -> bool:
        return self.first(q, mode) is not None


# -- module-level conveniences ----------------------------------------------

_SEARCHES: dict = {}


def search_for(db: Database) -> CoverSearch:
    """Shared CoverSearch per database, so tree caches are reused."""
    s = _SEARCHES.get(id(db))
    if s is None or s.db is not db:
        s = CoverSearch(db)
        if len(_SEARCHES) > 256:
            _SEARCHES.clear()
        _SEARCHES[id(db)] = s
    return s


def is_cyclic(c: LiteralSet, db: Database) -> bool:
    return search_for(db).is_cyclic(c)


def constructible_extensions(goal: CoverGoal, db: Database, minimal_only: bool = False,
                             limit: Optional[int] = None, check_seed: bool = True):
    s = search_for(db)
    if check_seed:
        _check_seed(s, goal.seed)
    return s.extensions(goal.seed, goal.mode, minimal_only, limit)


def _check_seed(s: CoverSearch, seed: LiteralSet):
    if not seed.consistent():
        raise NotCyclicSeed("seed is inconsistent")
    bad = s.unjustified(seed)
    if bad & (bad - 1):
        # more than one unexplained negation: not of the form R ∪ {¬A}
        raise NotCyclicSeed("seed has more than one unjustified negated atom")


def default_mode(db: Database) -> str:
    """Cheapest cover mode whose emptiness still decides entailment."""
    if db.stratified:
        return PLAIN
    return INT_TOTAL if db.lang.partitioned else TOTAL


def has_total_cover(q: LiteralSet, db: Database, mode: Optional[str] = None) -> bool:
    """Whether `q` has a total cyclic strong cover, i.e. T does not entail ⋁q.

    Stratified databases may use the plain search and partitioned ones the
    int-total search; both give the same answer as the total test.
    """
    return search_for(db).has_cover(q, mode or default_mode(db))


def extend_over_reduct(k: LiteralSet, d: LiteralSet, db: Database) -> Iterator[LiteralSet]:
    """Covers of {k} ∪ d formed as d ∪ G' with G' an extension of {k} in T_d."""
    s = search_for(db)
    if not s.is_strong(d):
        raise NotStrongCover("d is not a strong cover")
    if not s.is_cyclic(d):
        raise NotCyclic("d is not cyclic")
    if k.atoms & d.atoms:
        raise ValueError("literal already valued by d")
    sub = CoverSearch(reduce(db, d))
    for g in sub.extensions(k):
        yield d | g
