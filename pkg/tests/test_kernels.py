import random

import pytest
from hypothesis import given, settings, strategies as st

from minans import _pykernels, kernels


def _rules(rng, n, m):
    out = []
    for _ in range(m):
        head = rng.randrange(1, 1 << n)
        out.append((rng.randrange(0, 1 << n) & rng.randrange(0, 1 << n), rng.randrange(0, 1 << n) & rng.randrange(0, 1 << n) & rng.randrange(0, 1 << n), head))
    return out


def _tables(rules):
    a, nb, h = zip(*rules) if rules else ((), (), ())
    return _pykernels.RuleTable(list(a), list(nb), list(h))


needs_c = pytest.mark.skipif(kernels._ckernels is None, reason="compiled kernels not built")


@needs_c
@settings(max_examples=80, deadline=None)
@given(st.integers(0, 2**32))
def test_backends_agree(seed):
    rng = random.Random(seed)
    n = rng.randint(1, 7)
    rules = _rules(rng, n, rng.randint(0, 8))
    a, nb, h = (list(x) for x in zip(*rules)) if rules else ([], [], [])
    py = _pykernels.RuleTable(a, nb, h)
    c = kernels._ckernels.RuleTable(a, nb, h)
    assert sorted(py.models(n)) == sorted(c.models(n))
    assert sorted(py.stable_models(n)) == sorted(c.stable_models(n))
    for _ in range(10):
        pos, neg = rng.randrange(1 << n), rng.randrange(1 << n)
        neg &= ~pos
        assert py.first_violated(pos, neg, 0) == c.first_violated(pos, neg, 0)
    masks = [rng.randrange(1 << n) for _ in range(12)]
    assert sorted(_pykernels.minimal_masks(masks)) == sorted(kernels._ckernels.minimal_masks(masks))


def test_minimal_masks():
    assert sorted(kernels.minimal_masks([0b11, 0b1, 0b110, 0b100, 0b1])) == [0b1, 0b100]


def test_wide_language_falls_back():
    t = kernels.make_table([0], [0], [1 << 70], 71)
    assert isinstance(t, _pykernels.RuleTable)
    assert t.is_model(1 << 70) and not t.is_model(0)


def test_backend_name():
    assert kernels.BACKEND in ("cython", "python")
