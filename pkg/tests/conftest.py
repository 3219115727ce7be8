import os
import random

import pytest

from minans.core import load_database

FIXTURES = os.path.join(os.path.dirname(os.path.dirname(os.path.abspath(__file__))), "fixtures")


def fixture_path(name):
    return os.path.join(FIXTURES, name + ".dl")


def load(name):
    return load_database(fixture_path(name))


@pytest.fixture
def rng():
    return random.Random(20260115)


def lits(db, text):
    from minans.core import LiteralSet
    return LiteralSet.parse(text, db.lang)


def names(db, masks):
    return sorted(tuple(db.lang.atom_names(m)) for m in masks)
