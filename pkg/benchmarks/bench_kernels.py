"""Compare the Cython kernels with their pure-Python twins.

    python3 benchmarks/bench_kernels.py [--atoms 10] [--rules 12] [--tables 50]

Each kernel is timed on the same random rule tables under both backends, and
outputs are checked for equality.  The engine and the brute-force oracle are
then run over a random corpus, timed in two subprocesses, one with MINANS_PURE=1.
"""

import argparse
import os
import random
import subprocess
import sys
import timeit

from minans import _pykernels

try:
    from minans import _ckernels
except ImportError:
    _ckernels = None


def random_table(rng, n, k):
    full = (1 << n) - 1
    rows = []
    for _ in range(k):
        head = rng.randrange(1, full + 1) & rng.randrange(1, full + 1) or 1 << rng.randrange(n)
        rows.append((rng.randrange(full + 1) & rng.randrange(full + 1) & ~head,
                     rng.randrange(full + 1) & rng.randrange(full + 1) & rng.randrange(full + 1) & ~head,
                     head))
    return [list(col) for col in zip(*rows)]


def _kernels(mod, tables, n, masks):
    built = [mod.RuleTable(*t) for t in tables]
    probes = [(p, p ^ ((1 << n) - 1)) for p in range(0, 1 << n, 7)]
    return {
        "first_violated": lambda: [t.first_violated(p, q) for t in built for p, q in probes],
        "is_model": lambda: [t.is_model(m) for t in built for m in range(1 << n)],
        "stable_models": lambda: [t.stable_models(n) for t in built],
        "minimal_masks": lambda: mod.minimal_masks(masks),
    }


END_TO_END = """
import random, sys, time
sys.path.insert(0, "tests")
from minans import BACKEND, minimal_answers, oracle
from minans.errors import Inconsistent
from randdb import random_db
rng = random.Random(1)
dbs = [random_db(rng, n_atoms=7, n_rules=8) for _ in range({n})]
t = time.perf_counter()
for db in dbs:
    try:
        minimal_answers(db, allow_total=not db.stratified)
    except Inconsistent:
        pass
engine = time.perf_counter() - t
t = time.perf_counter()
for db in dbs:
    oracle._raw_stable(db)
print(BACKEND, engine, time.perf_counter() - t)
"""


def end_to_end(n):
    root = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
    out = {}
    for pure in ("0", "1"):
        env = dict(os.environ, MINANS_PURE=pure)
        res = subprocess.run([sys.executable, "-c", END_TO_END.format(n=n)], cwd=root, env=env,
                             capture_output=True, text=True, check=True)
        backend, engine, brute = res.stdout.split()
        out[backend] = (float(engine), float(brute))
    return out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--atoms", type=int, default=10)
    ap.add_argument("--rules", type=int, default=12)
    ap.add_argument("--tables", type=int, default=50)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--corpus", type=int, default=300, help="databases in the end-to-end run")
    args = ap.parse_args(argv)

    if _ckernels is None:
        print("compiled extension not built; run `pip install -e . --no-build-isolation` first")
        return 1
    rng = random.Random(0)
    tables = [random_table(rng, args.atoms, args.rules) for _ in range(args.tables)]
    masks = [rng.randrange(1 << args.atoms) for _ in range(2000)]
    py = _kernels(_pykernels, tables, args.atoms, masks)
    cy = _kernels(_ckernels, tables, args.atoms, masks)

    print(f"{'kernel':<16}{'python s':>12}{'cython s':>12}{'speedup':>10}")
    for name in py:
        if py[name]() != cy[name]():
            print(f"{name}: backends disagree")
            return 2
        tp = min(timeit.repeat(py[name], number=1, repeat=args.repeat))
        tc = min(timeit.repeat(cy[name], number=1, repeat=args.repeat))
        print(f"{name:<16}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")

    e2e = end_to_end(args.corpus)
    for i, name in enumerate(("engine corpus", "oracle corpus")):
        tp, tc = e2e["python"][i], e2e["cython"][i]
        print(f"{name:<16}{tp:>12.4f}{tc:>12.4f}{tp / tc:>9.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
