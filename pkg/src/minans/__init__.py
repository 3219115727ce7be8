"""Minimal answers of disjunctive deductive databases via cyclic strong covers."""

from minans.core import Database, Language, LiteralSet, Rule, load_database, parse_database, print_database
from minans.engine import CyclicState, minimal_answers
from minans.kernels import BACKEND

__version__ = "0.1.0"

__all__ = ["BACKEND", "CyclicState", "Database", "Language", "LiteralSet", "Rule",
           "load_database", "minimal_answers", "parse_database", "print_database"]
