"""Minimal-answer enumeration over cyclic states.

A cyclic state is a sequence ((A_1, C_1), ..., (A_r, C_r)) where each C_i is
a cyclic strong cover of {¬A_i} ∪ {A_j | j ≠ i}.  The driver grows states by
immediate extension, emits {A_1..A_r} once the atoms alone are entailed, and
backtracks otherwise.  Covers are supplied by one of three providers:

* direct, stratified: plain cyclic strong covers;
* direct, total: total cyclic strong covers (any database);
* compiled: COMP(Q) from a compiled base over a partitioned database.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator, Optional

from minans.compile import CompiledBase, CompQuery
from minans.core import Database, LiteralSet, bits, mask_key
from minans.covers import PLAIN, TOTAL, CoverSearch
from minans.errors import (EmptyState, Inconsistent, NotStratified, PartitionRequired,
                           StateComplete, StateVerified)

DIRECT, COMPILED = "direct", "compiled"


@dataclass(frozen=True)
class CyclicState:
    pairs: tuple = ()

    @property
    def atoms(self) -> int:
        m = 0
        for a, _ in self.pairs:
            m |= 1 << a
        return m

    @property
    def inter(self) -> int:
        """⋂ C_i⁺ (all atoms when the state is empty)."""
        m = -1
        for _, c in self.pairs:
            m &= c.pos
        return m

    @property
    def union_neg(self) -> int:
        m = 0
        for _, c in self.pairs:
            m |= c.neg
        return m

    @property
    def covers(self) -> tuple:
        return tuple(c for _, c in self.pairs)

    @property
    def last(self) -> int:
        return self.pairs[-1][0] if self.pairs else -1

    def key(self):
        return tuple((a, c.pos, c.neg) for a, c in self.pairs)

    def __len__(self):
        return len(self.pairs)

    def append(self, a: int, c: LiteralSet) -> "CyclicState":
        return CyclicState(self.pairs + ((a, c),))

    def with_covers(self, covers) -> "CyclicState":
        return CyclicState(tuple((a, c) for (a, _), c in zip(self.pairs, covers)))

    def format(self, lang) -> str:
        return " ".join(f"({lang.names[a]}, {{{c.format(lang)}}})" for a, c in self.pairs)


def truncate(s: CyclicState) -> CyclicState:
    if not s.pairs:
        raise EmptyState("cannot truncate an empty state")
    return CyclicState(s.pairs[:-1])


@dataclass
class Stats:
    states: int = 0
    verified: int = 0
    unverified: int = 0
    dead_ends: int = 0
    verified_atoms: set = field(default_factory=set, repr=False)
    non_minimal: int = 0
    uncovered_verified: int = 0


@dataclass
class AnswerStream:
    answers: list
    lang: object
    exhausted: bool = True
    stats: Optional[Stats] = None

    def __iter__(self):
        return iter(self.answers)

    def __len__(self):
        return len(self.answers)

    def named(self) -> list:
        return [self.lang.atom_names(m) for m in self.answers]

    def to_json(self) -> dict:
        return {"answers": self.named(), "complete": self.exhausted}


class Engine:
    """Cover provider plus the extension operators for one database and mode."""

    def __init__(self, db: Database, mode: str = DIRECT, comp: Optional[CompiledBase] = None,
                 query: Optional[int] = None, allow_total: bool = False):
        self.db = db
        self.lang = db.lang
        self.mode = mode
        universe = self.lang.full & ~self.lang.aux_mask
        self.hmask = universe if query is None else universe & query
        self.query = query
        if mode == COMPILED:
            if comp is None:
                raise PartitionRequired("compiled mode needs a compiled base")
            if not db.lang.partitioned:
                raise PartitionRequired("compiled mode needs an extensional/intensional partition")
            self.cq = CompQuery(comp, db)
            self.ext_heads = self.cq.heads
            self.cover_mode = None
        elif mode == DIRECT:
            if db.stratified:
                self.cover_mode = PLAIN
            elif allow_total:
                self.cover_mode = TOTAL
            else:
                raise NotStratified("database is not stratified; direct mode needs --allow-total")
            self.search = CoverSearch(db)
            self._memo = {}
        else:
            raise ValueError(f"unknown mode {mode!r}")

    # -- cover provider -----------------------------------------------------

    def covers(self, q: LiteralSet) -> tuple:
        """Covers of `q` generating all qualifying covers under containment."""
        if self.mode == COMPILED:
            return self.cq.query(q)
        key = (q.pos, q.neg)
        hit = self._memo.get(key)
        if hit is None:
            hit = tuple(self.search.extensions(q, self.cover_mode, minimal_only=True))
            self._memo[key] = hit
        return hit

    def first_cover(self, q: LiteralSet) -> Optional[LiteralSet]:
        if self.mode == COMPILED:
            return self.cq.first(q)
        hit = self._memo.get((q.pos, q.neg))
        if hit is not None:
            return hit[0] if hit else None
        return self.search.first(q, self.cover_mode)

    def _ext_entails(self, f: int) -> bool:
        return any(h & ~f == 0 for h in self.ext_heads)

    # -- verification -------------------------------------------------------

    def goal(self, s: CyclicState) -> LiteralSet:
        return LiteralSet(s.atoms | (self.hmask & s.inter), 0)

    def witness(self, s: CyclicState) -> Optional[LiteralSet]:
        """A qualifying cover of the verification goal, or None if `s` is verified."""
        return self.first_cover(self.goal(s))

    def is_verified(self, s: CyclicState) -> bool:
        return self.witness(s) is None

    def is_complete(self, s: CyclicState) -> bool:
        return self.is_verified(s) and self.first_cover(LiteralSet(s.atoms, 0)) is None

    def seeds(self) -> Iterator[CyclicState]:
        for a in bits(self.hmask):
            for c in self.covers(LiteralSet(0, 1 << a)):
                yield CyclicState(((a, c),))

    # -- extension ----------------------------------------------------------

    def _candidates(self, s: CyclicState, c: LiteralSet, after: int = -1) -> list:
        free = self.hmask & ~(c.pos | s.union_neg | s.atoms)
        free &= ~((1 << (after + 1)) - 1)
        first = free & s.inter
        return list(bits(first)) + list(bits(free & ~first))

    def _tuples(self, s: CyclicState, a: int):
        """Every choice of D_i ∈ ext({a} ∪ C_i), as tuples."""
        choices = []
        for c in s.covers:
            found = self.covers(LiteralSet(c.pos | 1 << a, c.neg))
            if not found:
                return []
            choices.append(found)
        return itertools.product(*choices)

    def extend_unverified(self, s: CyclicState, witness: Optional[LiteralSet] = None) -> Iterator[CyclicState]:
        if witness is None:
            witness = self.witness(s)
            if witness is None:
                raise StateVerified("state is already verified")
        if self.mode == COMPILED:
            yield from self._extend_unverified_compiled(s, witness)
            return
        if self.cover_mode == TOTAL:
            return  # total covers cannot grow
        for a in self._candidates(s, witness):
            for ds in self._tuples(s, a):
                yield s.with_covers(ds)

    def _extend_unverified_compiled(self, s, d):
        ext = self.lang.ext
        covers = s.covers
        seen = set()
        for e in self.ext_heads:
            ed = e & ~d.pos
            ok = True
            for c in covers:
                if ed & c.neg or not e & (d.pos & ~c.pos) or self._ext_entails(ed | (c.pos & ext)):
                    ok = False
                    break
            if not ok:
                continue
            new = tuple(LiteralSet(c.pos | ed, c.neg) for c in covers)
            if new not in seen:
                seen.add(new)
                yield s.with_covers(new)

    def extend_verified(self, s: CyclicState, after: int = -1) -> Iterator[CyclicState]:
        covs = self.covers(LiteralSet(s.atoms, 0))
        if not covs:
            raise StateComplete("the atoms of the state are already entailed")
        if self.mode == COMPILED:
            yield from self._extend_verified_compiled(s, covs, after)
            return
        seen = set()
        for c in covs:
            for a in self._candidates(s, c, after):
                if self.cover_mode == TOTAL:
                    # total covers: only a ∈ C⁻ ∩ ⋂C_i⁺ survives
                    if c.neg >> a & 1 and s.inter >> a & 1:
                        t = s.append(a, c)
                        if t.key() not in seen:
                            seen.add(t.key())
                            yield t
                    continue
                news = self.covers(LiteralSet(c.pos, c.neg | 1 << a))
                if not news:
                    continue
                for ds in self._tuples(s, a):
                    base = s.with_covers(ds)
                    for dn in news:
                        t = base.append(a, dn)
                        if t.key() not in seen:
                            seen.add(t.key())
                            yield t

    def _extend_verified_compiled(self, s, covs, after):
        lang = self.lang
        ext = lang.ext
        intl = lang.int_mask
        seen = set()

        def out(t):
            if t.key() not in seen:
                seen.add(t.key())
                return True
            return False

        for c in covs:
            cands = self._candidates(s, c, after)
            for a in cands:
                bit = 1 << a
                if intl & bit:
                    # case (a)
                    if c.neg & bit and s.inter & bit:
                        t = s.append(a, c)
                        if out(t):
                            yield t
                    continue
                # case (b)
                if any(self._ext_entails(bit | (ci.pos & ext)) for ci in s.covers):
                    continue
                cext_neg = c.neg & ext
                grown = s.with_covers(tuple(LiteralSet(ci.pos | bit, ci.neg) for ci in s.covers))
                for e in self.ext_heads:
                    if not e & bit:
                        continue
                    rest = e & ~bit
                    if rest & cext_neg or self._ext_entails(rest | (c.pos & ext)):
                        continue
                    nc = LiteralSet(c.pos | rest, c.neg | bit)
                    if not nc.consistent():
                        continue
                    t = grown.append(a, nc)
                    if out(t):
                        yield t


def _is_minimal(m: int, answers) -> bool:
    return not any(o != m and o & ~m == 0 for o in answers)


def minimal_answers(db: Database, mode: str = DIRECT, query: Optional[int] = None,
                    limit: Optional[int] = None, comp: Optional[CompiledBase] = None,
                    allow_total: bool = False, instrument: bool = False,
                    ordered: bool = True) -> AnswerStream:
    """Enumerate the minimal answers of `db` (subsets of `query` when given).

    With `ordered`, atoms are appended in increasing id order, which visits
    each answer through a single atom sequence.
    """
    eng = Engine(db, mode, comp, query, allow_total)
    if not eng.covers(LiteralSet()):
        raise Inconsistent("database has no stable model")
    stats = Stats() if instrument else None
    answers = []
    found = set()
    visited = set()
    stack = list(reversed(list(eng.seeds())))
    exhausted = True
    while stack:
        s = stack.pop()
        k = s.key()
        if k in visited:
            continue
        visited.add(k)
        if stats:
            stats.states += 1
        w = eng.witness(s)
        if w is None:
            if stats:
                stats.verified += 1
                stats.verified_atoms.add(s.atoms)
            try:
                kids = list(eng.extend_verified(s, s.last if ordered else -1))
            except StateComplete:
                m = s.atoms
                if m not in found:
                    found.add(m)
                    answers.append(m)
                    if limit is not None and len(answers) >= limit:
                        exhausted = False
                        break
                continue
        else:
            if stats:
                stats.unverified += 1
            kids = list(eng.extend_unverified(s, w))
        if not kids and stats:
            stats.dead_ends += 1
        stack.extend(reversed(kids))
    answers.sort(key=mask_key)
    if stats:
        stats.non_minimal = sum(1 for m in answers if not _is_minimal(m, answers))
        if exhausted:
            stats.uncovered_verified = sum(
                1 for v in stats.verified_atoms if not any(v & ~m == 0 for m in answers))
    return AnswerStream(answers, db.lang, exhausted, stats)


# -- module-level operator wrappers -------------------------------------------

def is_verified(s: CyclicState, db: Database, comp: Optional[CompiledBase] = None,
                query: Optional[int] = None, allow_total: bool = False) -> bool:
    mode = COMPILED if comp is not None else DIRECT
    return Engine(db, mode, comp, query, allow_total or not db.stratified).is_verified(s)


def extend_unverified(s: CyclicState, db: Database, comp: Optional[CompiledBase] = None,
                      query: Optional[int] = None, allow_total: bool = False) -> list:
    mode = COMPILED if comp is not None else DIRECT
    return list(Engine(db, mode, comp, query, allow_total or not db.stratified).extend_unverified(s))


def extend_verified(s: CyclicState, db: Database, comp: Optional[CompiledBase] = None,
                    query: Optional[int] = None, allow_total: bool = False) -> list:
    mode = COMPILED if comp is not None else DIRECT
    eng = Engine(db, mode, comp, query, allow_total or not db.stratified)
    if not eng.is_verified(s):
        raise ValueError("state is not verified")
    return list(eng.extend_verified(s))


__all__ = ["CyclicState", "AnswerStream", "Engine", "Stats", "minimal_answers", "is_verified",
           "extend_unverified", "extend_verified", "truncate", "DIRECT", "COMPILED"]
