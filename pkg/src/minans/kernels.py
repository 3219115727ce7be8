"""Kernel selection.

The compiled ``_ckernels`` extension is used when importable and the language
fits in 64 bits; otherwise the pure-Python twin in ``_pykernels`` is used.
Setting ``MINANS_PURE=1`` forces the pure-Python path.
"""

import os

from minans import _pykernels

try:
    if os.environ.get("MINANS_PURE") == "1":
        raise ImportError("pure backend forced")
    from minans import _ckernels
except ImportError:  # extension not built
    _ckernels = None

BACKEND = "cython" if _ckernels is not None else "python"

_WORD_BITS = 64


def make_table(antec, negb, head, nbits):
    """Build a rule table for rules over a language of `nbits` atoms."""
    if _ckernels is not None and nbits <= _WORD_BITS:
        return _ckernels.RuleTable(antec, negb, head)
    return _pykernels.RuleTable(antec, negb, head)


def minimal_masks(masks, nbits=_WORD_BITS):
    if _ckernels is not None and nbits <= _WORD_BITS:
        return _ckernels.minimal_masks(masks)
    return _pykernels.minimal_masks(masks)
