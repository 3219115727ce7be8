"""Random database generators shared by the property tests."""

import random

from minans.core import parse_database


def random_rule_text(rng, names, max_body=2, neg_prob=0.35, max_head=2):
    head = rng.sample(names, rng.randint(1, max_head))
    k = rng.randint(0, max_body)
    body = []
    for a in rng.sample(names, min(k, len(names))):
        body.append(("~" + a) if rng.random() < neg_prob else a)
    text = " | ".join(head) + "."
    if body:
        text = " & ".join(body) + " -> " + text
    return text


def random_db(rng, n_atoms=None, n_rules=None, neg_prob=0.35):
    n = n_atoms or rng.randint(2, 7)
    names = [f"a{i}" for i in range(n)]
    m = n_rules or rng.randint(1, 8)
    lines = [random_rule_text(rng, names, neg_prob=neg_prob) for _ in range(m)]
    return parse_database("\n".join(lines) + "\n")


def random_partitioned_db(rng, n_int=None, n_ext=None, n_int_rules=None, n_ext_rules=None,
                          neg_prob=0.3):
    ni = n_int or rng.randint(1, 4)
    ne = n_ext or rng.randint(1, 3)
    ints = [f"q{i}" for i in range(ni)]
    exts = [f"e{i}" for i in range(ne)]
    lines = ["#ext " + ", ".join(exts) + "."]
    for _ in range(n_int_rules or rng.randint(1, 5)):
        head = rng.sample(ints, rng.randint(1, min(2, ni)))
        k = rng.randint(1, 2)
        body = []
        for a in rng.sample(ints + exts, min(k, ni + ne)):
            body.append(("~" + a) if rng.random() < neg_prob else a)
        lines.append(" & ".join(body) + " -> " + " | ".join(head) + ".")
    for _ in range(n_ext_rules if n_ext_rules is not None else rng.randint(1, 3)):
        head = rng.sample(exts, rng.randint(1, min(2, ne)))
        lines.append(" | ".join(head) + ".")
    return parse_database("\n".join(lines) + "\n")
