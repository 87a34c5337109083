#!/usr/bin/env python3
"""Compare the compiled and pure-Python simplex kernels.

Solves the same batch of random world-probability systems with each backend
and checks that both return identical bounds.

    python benchmarks/bench_kernels.py --atoms 6 --rows 8 --systems 40
"""

import argparse
import random
import statistics
import time
from fractions import Fraction

from gpdb import _pykernels, lp
from gpdb.worlds import ConstraintSystem, Row

try:
    from gpdb import _ckernels
except ImportError:
    _ckernels = None


def random_systems(seed, atoms, rows, count):
    rng = random.Random(seed)
    nvars = 1 << atoms
    full = (1 << nvars) - 1
    out = []
    while len(out) < count:
        # centre every bound on one random distribution so most systems are feasible
        weights = [rng.randint(0, 20) for _ in range(nvars)]
        total = sum(weights) or 1
        cs_rows = []
        for _ in range(rows):
            mask = rng.randint(1, full)
            p = Fraction(sum(w for i, w in enumerate(weights) if mask >> i & 1), total)
            slack = Fraction(rng.randint(0, 10), 100)
            cs_rows.append(Row(mask, max(Fraction(0), p - slack), min(Fraction(1), p + slack)))
        objectives = [rng.randint(1, full) for _ in range(4)]
        out.append((ConstraintSystem.normalized(nvars, cs_rows), objectives))
    return out


def time_backend(impl, systems, repeat):
    lp.kernels = impl
    results, samples = None, []
    for _ in range(repeat):
        start = time.perf_counter()
        results = [lp.bounds(cs, objectives) for cs, objectives in systems]
        samples.append(time.perf_counter() - start)
    return results, min(samples), statistics.median(samples)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--atoms", type=int, default=6)
    ap.add_argument("--rows", type=int, default=8)
    ap.add_argument("--systems", type=int, default=40)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    systems = random_systems(args.seed, args.atoms, args.rows, args.systems)
    backends = [("python", _pykernels)]
    if _ckernels is not None:
        backends.insert(0, ("cython", _ckernels))
    else:
        print("compiled kernels not built; timing the fallback only")

    print(f"{args.systems} systems, {1 << args.atoms} worlds, {args.rows} rows, best of {args.repeat}")
    reference, base_time = None, None
    for name, impl in backends:
        results, best, median = time_backend(impl, systems, args.repeat)
        if reference is None:
            reference, base_time = results, best
        elif results != reference:
            raise SystemExit(f"{name} backend disagrees with the first backend")
        print(f"  {name:<7} best {best * 1000:8.1f} ms   median {median * 1000:8.1f} ms"
              f"   relative {best / base_time:5.2f}x")
    feasible = sum(r is not None for r in reference)
    print(f"  {feasible}/{len(systems)} systems feasible; backends agree")


if __name__ == "__main__":
    main()
