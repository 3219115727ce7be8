import random

import pytest
from hypothesis import given, settings, strategies as st

from minans import oracle
from minans.core import LiteralSet, parse_database
from minans.errors import PartitionRequired
from minans.trees import TreeSource, cyclic_trees, partial_cyclic_trees, partial_source, tree_count_bound

from conftest import lits, load
from worked_example import PARTIAL_TREE_S
from randdb import random_db


def test_partial_trees_of_worked_example():
    db = load("a_int")
    src = partial_source(db)
    got = set()
    for name in ("q1", "q2", "q3", "q4"):
        got |= {t.s for t in src.trees(db.lang.id(name))}
    assert got == {lits(db, s) for s in PARTIAL_TREE_S}


def test_duplicate_s_set_for_q2():
    # q1's first tree and one q2 tree share the S-set of item 1
    db = load("a_int")
    src = partial_source(db)
    t1 = lits(db, PARTIAL_TREE_S[0])
    assert t1 in {t.s for t in src.trees(db.lang.id("q1"))}
    assert t1 in {t.s for t in src.trees(db.lang.id("q2"))}


def test_partial_trees_need_partition():
    with pytest.raises(PartitionRequired):
        partial_cyclic_trees(0, load("intro"))


def test_simple_trees():
    db = parse_database("A | B.")
    a, b = db.lang.id("A"), db.lang.id("B")
    assert [t.s for t in cyclic_trees(a, db)] == [lits(db, "-A +B")]
    assert [t.s for t in cyclic_trees(b, db)] == [lits(db, "+A -B")]


def test_forbid_filters_inconsistent_trees():
    db = parse_database("A | B.")
    a = db.lang.id("A")
    assert cyclic_trees(a, db, forbid=lits(db, "-B")) == ()


def test_atom_without_tree():
    db = parse_database("A -> B. B -> A.")
    assert cyclic_trees(db.lang.id("A"), db) == ()


def test_tree_demo_s_set():
    db = load("tree_demo")
    q1 = db.lang.id("q1")
    s = {t.s for t in cyclic_trees(q1, db)}
    want = LiteralSet(db.lang.mask(["q5", "r1", "r2", "q6", "r7", "r3", "r5"]),
                      db.lang.mask(["q1", "q2", "q3", "s3", "s2"]))
    assert want in s


def test_build_rebuilds_structure():
    db = load("a_int")
    src = partial_source(db)
    t = src.trees(db.lang.id("q1"))[0]
    root = src.build(t)
    assert root.kind == "predicate" and root.label == db.lang.id("q1")

    def walk(n, pred):
        if n.kind == "predicate":
            pred.add(n.label)
        for c in n.children:
            walk(c, pred)
        return pred

    assert sum(1 << p for p in walk(root, set())) | src.hidden_facts & t.pred == t.pred | (src.hidden_facts & t.pred)


def test_tree_count_bound():
    assert tree_count_bound(4) == 10
    assert tree_count_bound(load("intro").lang) == 10


@settings(max_examples=120, deadline=None)
@given(st.integers(0, 2**32))
def test_tree_s_sets_certify(seed):
    """Every model avoiding O ∪ N of a tree for P, and stable, contains Pred.

    Checked in the form used by the cover search: a stable model M gives the
    total cover M̄ ∪ (L - M); every atom of M has a tree whose S-set lies in it.
    """
    rng = random.Random(seed)
    db = random_db(rng, n_atoms=rng.randint(2, 5), n_rules=rng.randint(1, 6))
    src = TreeSource(db)
    for m in oracle._raw_stable(db):
        c = LiteralSet.of_model(m, db.lang)
        for p in range(len(db.lang)):
            if m >> p & 1:
                assert any(t.s <= c for t in src.trees(p))
        for p in range(len(db.lang)):
            for t in src.trees(p):
                if not (t.out | t.negs) & m:
                    assert t.pred & ~m == 0
