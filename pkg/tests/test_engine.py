import random

import pytest
from hypothesis import given, settings, strategies as st

from minans import oracle
from minans.compile import compile_db
from minans.core import LiteralSet, parse_database
from minans.engine import (COMPILED, DIRECT, CyclicState, Engine, extend_unverified, extend_verified,
                           is_verified, minimal_answers, truncate)
from minans.errors import (EmptyState, Inconsistent, NotStratified, StaleCompilation, StateComplete,
                           StateVerified)

from conftest import lits, load, names
from worked_example import D1, D2, F1, F2, G1, G2
from randdb import random_db, random_partitioned_db


def _state(db, *pairs):
    return CyclicState(tuple((db.lang.id(a), lits(db, c)) for a, c in pairs))


def test_intro_answers():
    db = load("intro")
    res = minimal_answers(db, instrument=True)
    assert names(db, res.answers) == [("A", "B"), ("B", "C"), ("D",)]
    assert res.stats.non_minimal == 0 and res.stats.uncovered_verified == 0


def test_intro_query():
    db = load("intro")
    res = minimal_answers(db, query=db.lang.mask(["C", "D"]))
    assert names(db, res.answers) == [("D",)]


def test_example_a1_answers():
    db = load("a1")
    for res in (minimal_answers(db), minimal_answers(db, COMPILED, comp=compile_db(db))):
        got = names(db, res.answers)
        assert ("q2", "q4") in got and ("q2", "s3") in got
        assert not any({"q1", "q3"} & set(a) for a in got)
        assert res.answers == oracle.minimal_answers_bf(db)


def test_example_a3_answer():
    db = load("a3")
    got = names(db, minimal_answers(db, COMPILED, comp=compile_db(db)).answers)
    assert ("q3", "r3", "s1") in got


def test_a1_verified_extensions():
    db = load("a1")
    comp = compile_db(db)
    s = _state(db, ("q2", D2))
    assert is_verified(s, db, comp)
    kids = extend_verified(s, db, comp)
    assert _state(db, ("q2", D2), ("q4", D1)) in kids
    assert _state(db, ("q2", D2), ("s3", D1)) in kids
    for done in (_state(db, ("q2", D2), ("q4", D1)), _state(db, ("q2", D2), ("s3", D1))):
        with pytest.raises(StateComplete):
            extend_verified(done, db, comp)


def test_unverified_state_witness():
    db = load("a3")
    comp = compile_db(db)
    eng = Engine(db, COMPILED, comp)
    s1 = _state(db, ("q3", F1), ("q2", F2))
    w = eng.witness(s1)
    assert w is not None
    assert lits(db, "q2 q3 q1 q4") <= w
    # the cover from the example is one admissible witness
    assert lits(db, G1) in eng.covers(eng.goal(s1))
    kids = list(eng.extend_unverified(s1, lits(db, G1)))
    want = _state(db, ("q3", F1 + " +r3"), ("q2", F2 + " +r3"))
    assert want in kids
    assert eng.is_verified(want)
    assert extend_unverified(s1, db, comp)


def test_a3_verified_state_and_extension():
    db = load("a3")
    comp = compile_db(db)
    s2 = _state(db, ("q3", F1), ("r3", G1))
    assert is_verified(s2, db, comp)
    eng = Engine(db, COMPILED, comp)
    assert lits(db, G2) in eng.covers(LiteralSet(s2.atoms, 0)) or any(
        c <= lits(db, G2) for c in eng.covers(LiteralSet(s2.atoms, 0)))
    kids = list(eng._extend_verified_compiled(s2, (lits(db, G2),), -1))
    want = _state(db, ("q3", F1), ("r3", G1), ("s1", G2))
    assert want in kids
    with pytest.raises(StateComplete):
        list(eng.extend_verified(want))


def test_length_one_states_are_verified():
    for name in ("intro", "chain", "tree_demo"):
        db = load(name)
        eng = Engine(db)
        for s in eng.seeds():
            assert eng.is_verified(s)


def test_extend_unverified_rejects_verified():
    db = load("intro")
    eng = Engine(db)
    s = next(eng.seeds())
    with pytest.raises(StateVerified):
        list(eng.extend_unverified(s))


def test_truncate():
    db = load("a1")
    s = _state(db, ("q2", D2), ("q4", D1))
    assert truncate(s) == _state(db, ("q2", D2))
    assert truncate(truncate(s)) == CyclicState()
    with pytest.raises(EmptyState):
        truncate(CyclicState())


def test_errors():
    with pytest.raises(Inconsistent):
        minimal_answers(load("odd_loops"), allow_total=True)
    with pytest.raises(NotStratified):
        minimal_answers(load("odd_loops"))
    db = load("a1")
    other = load("a_int")
    edited = parse_database("#ext r1, s3.\nr1 -> q2.\nr1 | s3.\n")
    with pytest.raises(StaleCompilation):
        minimal_answers(edited, COMPILED, comp=compile_db(db))
    assert minimal_answers(other, COMPILED, comp=compile_db(db)).answers == []


def test_limit():
    db = load("tree_demo")
    res = minimal_answers(db, limit=2)
    assert len(res.answers) == 2 and not res.exhausted
    assert set(res.answers) <= set(minimal_answers(db).answers)


def test_unstratified_total_mode():
    db = load("unstratified_cover")
    res = minimal_answers(db, allow_total=True)
    assert res.answers == oracle.minimal_answers_bf(db)


def _check(db, **kw):
    try:
        want = oracle.minimal_answers_bf(db, kw.get("query"))
    except Inconsistent:
        with pytest.raises(Inconsistent):
            minimal_answers(db, allow_total=True, **kw)
        return
    res = minimal_answers(db, allow_total=True, instrument=True, **kw)
    assert res.answers == want
    assert res.stats.non_minimal == 0 and res.stats.uncovered_verified == 0


@settings(max_examples=300, deadline=None)
@given(st.integers(0, 2**32))
def test_random_direct_matches_oracle(seed):
    rng = random.Random(seed)
    _check(random_db(rng))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_random_query_matches_oracle(seed):
    rng = random.Random(seed)
    db = random_db(rng)
    _check(db, query=rng.randrange(1, 1 << len(db.lang)))


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_random_compiled_matches_direct(seed):
    rng = random.Random(seed)
    db = random_partitioned_db(rng, neg_prob=0.0 if seed % 3 == 0 else 0.3)
    try:
        want = oracle.minimal_answers_bf(db)
    except Inconsistent:
        return
    comp = compile_db(db)
    res = minimal_answers(db, COMPILED, comp=comp, instrument=True)
    assert res.answers == want
    assert res.stats.non_minimal == 0 and res.stats.uncovered_verified == 0
    if db.stratified:
        assert minimal_answers(db, DIRECT).answers == res.answers
    q = rng.randrange(1, 1 << len(db.lang))
    assert minimal_answers(db, COMPILED, comp=comp, query=q).answers == oracle.minimal_answers_bf(db, q)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_unordered_driver_agrees(seed):
    rng = random.Random(seed)
    db = random_db(rng, n_atoms=rng.randint(2, 5))
    try:
        a = minimal_answers(db, allow_total=True).answers
    except Inconsistent:
        return
    assert minimal_answers(db, allow_total=True, ordered=False).answers == a


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32))
def test_verified_extension_exists(seed):
    """A verified state that is not complete always has an immediate extension."""
    rng = random.Random(seed)
    db = random_db(rng, n_atoms=rng.randint(2, 6))
    try:
        eng = Engine(db, allow_total=True)
        if not eng.covers(LiteralSet()):
            return
    except Inconsistent:
        return
    for s in eng.seeds():
        if eng.is_verified(s) and eng.covers(LiteralSet(s.atoms, 0)):
            assert list(eng.extend_verified(s))
