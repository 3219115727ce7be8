"""Brute-force reference semantics.

Everything here enumerates subsets of the language, so it is exponential in
|L|.  The size guard defaults to 20 atoms and can be changed with the
``MINANS_ORACLE_BOUND`` environment variable.  Reported models and answers
never mention the auxiliary atom introduced by normalization.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from itertools import product

from minans import kernels
from minans.core import Database, LiteralSet, bits, is_strong_cover_rules, mask_key, restrict
from minans.errors import Inconsistent, NotStratified, TooLarge

DEFAULT_BOUND = 20


def bound() -> int:
    return int(os.environ.get("MINANS_ORACLE_BOUND", DEFAULT_BOUND))


def _guard(db: Database):
    if len(db.lang) > bound():
        raise TooLarge(f"language has {len(db.lang)} atoms; oracle bound is {bound()}")


@dataclass(frozen=True)
class ModelSet:
    models: tuple

    @classmethod
    def of(cls, masks):
        return cls(tuple(sorted(set(masks), key=lambda m: list(bits(m)))))

    def __iter__(self):
        return iter(self.models)

    def __len__(self):
        return len(self.models)

    def __contains__(self, m):
        return m in self.models

    def named(self, lang):
        return [lang.atom_names(m) for m in self.models]


def _report(db, masks):
    return ModelSet.of(db.lang.strip(m) for m in masks)


def _raw_models(db):
    _guard(db)
    return db.table.models(len(db.lang))


def _raw_stable(db):
    _guard(db)
    return db.table.stable_models(len(db.lang))


def models(db: Database) -> ModelSet:
    return _report(db, _raw_models(db))


def minimal_models(db: Database) -> ModelSet:
    return _report(db, kernels.minimal_masks(_raw_models(db), len(db.lang)))


def stable_models(db: Database) -> ModelSet:
    return _report(db, _raw_stable(db))


def is_stable(m: int, db: Database) -> bool:
    """Whether `m` (over the full language, auxiliary atom included) is stable."""
    table = db.table
    if not table.is_model(m):
        return False
    sub = (m - 1) & m
    while m:
        if table.is_reduct_model(sub, m):
            return False
        if sub == 0:
            break
        sub = (sub - 1) & m
    return True


def perfect_models(db: Database) -> ModelSet:
    _guard(db)
    if not db.stratified:
        raise NotStratified("perfect models need a stratified database")
    level = db.strat.level
    n = len(db.lang)
    top = max(level, default=0)
    by_level = []
    layer_atoms = []
    for a in range(top + 1):
        rules = [r for r in db.rules if level[next(bits(r.conseq))] == a]
        by_level.append(kernels.make_table([r.antec for r in rules], [r.negbody for r in rules],
                                           [r.conseq for r in rules], n))
        layer_atoms.append(sum(1 << i for i in range(n) if level[i] == a))
    below = [0] * (top + 1)
    for a in range(1, top + 1):
        below[a] = below[a - 1] | layer_atoms[a - 1]
    out = []
    for m in _raw_models(db):
        ok = True
        for a in range(top + 1):
            layer = m & layer_atoms[a]
            base = m & below[a]
            sub = (layer - 1) & layer
            while layer:
                if by_level[a].is_model(base | sub):
                    ok = False
                    break
                if sub == 0:
                    break
                sub = (sub - 1) & layer
            if not ok:
                break
        if ok:
            out.append(m)
    return _report(db, out)


def entails(db: Database, atoms: int) -> bool:
    return all(m & atoms for m in _raw_stable(db))


def entails_literals(db: Database, q: LiteralSet) -> bool:
    """T ⊨ ⋁Q, with positive literals true when the atom is in the model."""
    return all(m & q.pos or ~m & q.neg for m in _raw_stable(db))


def minimal_transversals(sets, universe: int) -> list:
    """All ⊆-minimal subsets of `universe` meeting every mask in `sets`."""
    family = [0]
    for s in sorted(set(sets), key=lambda x: x.bit_count()):
        s &= universe
        nxt = []
        for a in family:
            if a & s:
                nxt.append(a)
            else:
                nxt.extend(a | (1 << x) for x in bits(s))
        family = kernels.minimal_masks(nxt, universe.bit_length())
    return sorted(family, key=mask_key)


def minimal_answers_bf(db: Database, query: int | None = None) -> list:
    """Minimal answers, optionally restricted to subsets of `query`."""
    stable = [db.lang.strip(m) for m in _raw_stable(db)]
    if not stable:
        raise Inconsistent("database has no stable model")
    universe = db.lang.strip(db.lang.full)
    if query is not None:
        universe &= query
    if any(not m & universe for m in stable):
        return []
    return minimal_transversals(stable, universe)


def is_cyclic_bf(c: LiteralSet, db: Database) -> bool:
    sub = restrict(db, c)
    m = c.neg
    keep = [r for r in sub.rules if not (r.antec & ~m == 0 and not r.negbody & m and not r.conseq & m)]
    return is_stable(m, db.with_rules(keep))


def all_literal_sets(atoms: int):
    """Every consistent literal set over the atoms of mask `atoms`."""
    ids = list(bits(atoms))
    for signs in product((0, 1, 2), repeat=len(ids)):
        pos = neg = 0
        for i, s in zip(ids, signs):
            if s == 1:
                pos |= 1 << i
            elif s == 2:
                neg |= 1 << i
        yield LiteralSet(pos, neg)


def cyclic_strong_covers_bf(db: Database, seed: LiteralSet = LiteralSet(), rules=None,
                            total_over: int = 0) -> list:
    """All cyclic strong covers containing `seed` (brute force).

    `rules` overrides the rule list used for the strong-cover test and
    `total_over` demands that the cover values every atom of that mask.
    """
    _guard(db)
    rules = db.rules if rules is None else rules
    free = db.lang.full & ~seed.atoms
    out = []
    for extra in all_literal_sets(free):
        c = seed | extra
        if total_over & ~c.atoms:
            continue
        if is_strong_cover_rules(c, rules) and is_cyclic_bf(c, db):
            out.append(c)
    return out
