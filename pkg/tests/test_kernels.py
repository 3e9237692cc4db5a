import os
import subprocess
import sys

import pytest
from hypothesis import given, strategies as st

from moprs import _kernels_py as pyk
from moprs import kernels

compiled = pytest.importorskip("moprs._kernels")

ints = st.integers(-10**12, 10**12)
square = st.integers(0, 6).flatmap(lambda n: st.lists(st.lists(ints, min_size=n, max_size=n), min_size=n, max_size=n))
# Small entries hit singular and rank-deficient cases often.
small_square = st.integers(1, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-2, 2), min_size=n, max_size=n), min_size=n, max_size=n)
)


def copy(m):
    return [row[:] for row in m]


@given(st.one_of(square, small_square))
def test_det_parity(m):
    assert compiled.bareiss_det(copy(m)) == pyk.bareiss_det(copy(m))


@given(st.one_of(square, small_square))
def test_rank_parity(m):
    assert compiled.bareiss_rank(copy(m)) == pyk.bareiss_rank(copy(m))


@given(small_square.flatmap(lambda m: st.tuples(st.just(m), st.lists(st.integers(-5, 5), min_size=len(m), max_size=len(m)))))
def test_solve_parity(case):
    m, b = case
    got_c = compiled.bareiss_solve(copy(m), b[:])
    got_p = pyk.bareiss_solve(copy(m), b[:])
    assert got_c == got_p
    if got_p is not None:
        nums, den = got_p
        assert den != 0
        assert [sum(a * x for a, x in zip(row, nums)) for row in m] == [v * den for v in b]


def test_known_values():
    for k in (compiled, pyk):
        assert k.bareiss_det([[2, 1], [1, 3]]) == 5
        assert k.bareiss_det([[0, 1], [1, 0]]) == -1
        assert k.bareiss_det([]) == 1
        assert k.bareiss_rank([[1, 2], [2, 4]]) == 1
        assert k.bareiss_solve([[1, 2], [2, 4]], [1, 1]) is None


def test_backend_selection():
    assert kernels.BACKEND in ("compiled", "python")
    env = dict(os.environ, MOPRS_PURE_PYTHON="1")
    out = subprocess.run(
        [sys.executable, "-c", "import moprs.kernels as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    )
    assert out.stdout.strip() == "python"
