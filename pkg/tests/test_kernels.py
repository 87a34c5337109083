import copy
import os
import random
import subprocess
import sys

import pytest

from gpdb import _pykernels, kernels, lp
from gpdb.worlds import ConstraintSystem, Row
from randprog import random_system, seeded

try:
    from gpdb import _ckernels
except ImportError:  # extension not built
    _ckernels = None

needs_extension = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")


def test_backend_is_reported():
    assert kernels.BACKEND in ("cython", "python")


def _tableau(rng, m, n):
    return [[rng.randint(-9, 9) for _ in range(n + 1)] for _ in range(m)]


@needs_extension
def test_kernels_agree_on_random_tableaux():
    rng = random.Random(8)
    for _ in range(300):
        m, n = rng.randint(1, 5), rng.randint(1, 6)
        rows = _tableau(rng, m, n)
        obj = [rng.randint(-5, 5) for _ in range(n + 1)]
        assert _pykernels.entering(obj, n) == _ckernels.entering(obj, n)
        basis = list(range(n, n + m))
        # the ratio test only looks at non-negative right-hand sides
        for row in rows:
            row[-1] = abs(row[-1])
        c = rng.randrange(n)
        assert _pykernels.leaving(rows, m, c, basis) == _ckernels.leaving(rows, m, c, basis)
        r = rng.randrange(m)
        if rows[r][c] == 0:
            continue
        a, b = copy.deepcopy(rows + [obj]), copy.deepcopy(rows + [obj])
        # a denominator of 1 keeps every exact-division step integral
        assert _pykernels.pivot(a, r, c, 1) == _ckernels.pivot(b, r, c, 1)
        assert a == b


@needs_extension
def test_solver_results_do_not_depend_on_backend(monkeypatch):
    rng = seeded(9)
    systems = [random_system(rng) for _ in range(200)]

    def solve_all(impl):
        monkeypatch.setattr(lp, "kernels", impl)
        out = []
        for nvars, rows, objectives in systems:
            cs = ConstraintSystem.normalized(nvars, [Row(m, lo, hi) for m, lo, hi in rows])
            out.append(lp.bounds(cs, objectives))
        return out

    assert solve_all(_pykernels) == solve_all(_ckernels)


def test_environment_forces_fallback():
    env = dict(os.environ, GPDB_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "from gpdb import kernels; print(kernels.BACKEND)"],
        capture_output=True, text=True, env=env, check=True,
    ).stdout
    assert out.strip() == "python"
