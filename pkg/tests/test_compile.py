import random
import warnings

import pytest
from hypothesis import given, settings, strategies as st

from minans import oracle
from minans.compile import (CompQuery, comp_query, compile_db, completions, completions_checked,
                            ext_entails, fingerprint, load, save, weak_search)
from minans.core import LiteralSet, parse_database, print_database
from minans.covers import INT_TOTAL, CoverSearch
from minans.errors import (FormatError, IoError, NoCompletion, PartitionRequired, StaleCompilation,
                           StaleCompilationWarning)

from conftest import lits, load as load_fixture
from worked_example import D1, D2, D3, LISTED_COVERS
from randdb import random_partitioned_db


def test_ext_entails():
    db = load_fixture("a1")
    m = db.lang.mask
    assert ext_entails(db, m(["r1", "s3", "q1"]))
    assert not ext_entails(db, m(["r1"]))
    db3 = load_fixture("a3")
    assert ext_entails(db3, db3.lang.mask(["s1", "s2", "r3"]))


def test_comp_of_example_a1():
    db = load_fixture("a1")
    base = compile_db(db)
    got = CompQuery(base, db).query(LiteralSet())
    assert set(got) == {lits(db, D1), lits(db, D2), lits(db, D3)}
    assert comp_query(base, lits(db, "q2"), db) == (lits(db, D1),)
    assert comp_query(base, lits(db, "q2 q4"), db) == ()


def test_completion_of_item_11():
    db = load_fixture("a1")
    c = lits(db, LISTED_COVERS[10])
    assert list(completions(c, db, db.lang)) == [lits(db, D2)]


def test_completion_rejected_by_subsumption():
    db = load_fixture("a1")
    c = lits(db, LISTED_COVERS[21])
    (d,) = completions(c, db, db.lang)
    assert d == c
    assert ext_entails(db, d.pos & db.lang.ext)


def test_completion_without_ext_negations():
    db = load_fixture("a1")
    c = lits(db, "+q1 +q4 -q2 +q3")
    assert list(completions(c, db, db.lang)) == [c]


def test_no_completion():
    db = parse_database("#ext e, f.\ne -> q.\nf.\n")
    c = LiteralSet(0, db.lang.mask(["e", "q"]))
    assert list(completions(c, db, db.lang)) == []
    with pytest.raises(NoCompletion):
        completions_checked(c, db, db.lang)


def test_single_rule_compilation():
    db = parse_database("#ext a.\na -> q.\n")
    base = compile_db(db)
    assert set(base.covers) == {lits(db, "~q ~a"), lits(db, "q a")}


def test_empty_intension():
    db = parse_database("#ext e.\ne.\n")
    base = compile_db(db)
    assert base.covers == (LiteralSet(),)


def test_partition_required():
    with pytest.raises(PartitionRequired):
        compile_db(load_fixture("intro"))


def test_listed_covers_are_weakly_cyclic():
    db = load_fixture("a_int")
    s = weak_search(db)
    base = compile_db(db)
    for text in LISTED_COVERS:
        c = lits(db, text)
        assert c.consistent() and s.is_strong(c) and s.is_cyclic(c)
    for k in base.covers:
        assert any(k <= lits(db, t) for t in LISTED_COVERS)


def test_save_load_round_trip(tmp_path):
    db = load_fixture("a1")
    base = compile_db(db)
    path = tmp_path / "a1.comp"
    save(base, path)
    again = load(path, db)
    assert again == base and again.fresh


def test_fingerprint_ignores_extension(tmp_path):
    a1, a3 = load_fixture("a1"), load_fixture("a3")
    assert fingerprint(a1) == fingerprint(a3)
    save(compile_db(a1), tmp_path / "x.comp")
    save(compile_db(a3), tmp_path / "y.comp")
    assert (tmp_path / "x.comp").read_bytes() == (tmp_path / "y.comp").read_bytes()
    with warnings.catch_warnings():
        warnings.simplefilter("error")
        assert load(tmp_path / "x.comp", a3).fresh


def test_edit_to_intension_is_stale(tmp_path):
    db = load_fixture("a1")
    save(compile_db(db), tmp_path / "a1.comp")
    edited = parse_database(print_database(db).replace("r1 -> q2.", "r1 -> q2 | q3."))
    assert fingerprint(edited) != fingerprint(db)
    with pytest.warns(StaleCompilationWarning):
        base = load(tmp_path / "a1.comp", edited)
    assert not base.fresh
    with pytest.raises(StaleCompilation):
        comp_query(base, LiteralSet(), edited)


def test_load_errors(tmp_path):
    with pytest.raises(IoError):
        load(tmp_path / "missing.comp")
    bad = tmp_path / "bad.comp"
    bad.write_text("{not json")
    with pytest.raises(FormatError):
        load(bad)
    bad.write_text('{"version": 1}')
    with pytest.raises(FormatError):
        load(bad)


def _brute_weak_int_total(db):
    """All int-total weakly cyclic covers by brute force."""
    s = weak_search(db)
    out = []
    for c in oracle.all_literal_sets(db.lang.full):
        if c.is_int_total(db.lang) and s.is_strong(c) and s.is_cyclic(c):
            out.append(c)
    return out


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 2**32))
def test_comp_generating_and_antichain(seed):
    rng = random.Random(seed)
    db = random_partitioned_db(rng, n_int=rng.randint(1, 3), n_ext=rng.randint(1, 3))
    base = compile_db(db)
    for a in base.covers:
        for b in base.covers:
            assert a == b or not a <= b
    for c in _brute_weak_int_total(db):
        assert any(k <= c for k in base.covers)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_completion_criterion(seed):
    """A completion is a cyclic strong cover iff EXT(T) does not entail its ext positives."""
    rng = random.Random(seed)
    db = random_partitioned_db(rng)
    base = compile_db(db)
    for c in base.covers:
        for d in completions(c, db, db.lang):
            good = is_cover = d.consistent() and all(
                not (r.conseq & ~d.pos == 0 and not r.antec & d.pos and not r.negbody & d.neg)
                for r in db.rules) and oracle.is_cyclic_bf(d, db)
            assert good == (not ext_entails(db, d.pos & db.lang.ext)), (c, d)


@settings(max_examples=200, deadline=None)
@given(st.integers(0, 2**32))
def test_comp_query_decides_entailment(seed):
    rng = random.Random(seed)
    db = random_partitioned_db(rng)
    base = compile_db(db)
    cq = CompQuery(base, db)
    q = LiteralSet(rng.randrange(1 << len(db.lang)), 0)
    assert (not cq.query(q)) == oracle.entails(db, q.pos)


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32))
def test_compiled_and_direct_covers_agree(seed):
    rng = random.Random(seed)
    db = random_partitioned_db(rng)
    cq = CompQuery(compile_db(db), db)
    n = len(db.lang)
    q = LiteralSet(rng.randrange(1 << n) & rng.randrange(1 << n), 0)
    compiled = cq.query(q)
    direct = list(CoverSearch(db).extensions(q, INT_TOTAL, minimal_only=True))
    for d in compiled:
        assert any(x <= d for x in direct)
    for x in direct:
        assert any(d <= x for d in compiled)
