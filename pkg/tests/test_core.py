from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from moprs.arith import Poly
from moprs.core import System, index_box, unit
from moprs.errors import ArityMismatch, NotNormal, ZeroIndex
from moprs.functionals import ExplicitMoments, IntervalLebesgue, PointMasses

X = Poly.x()


def test_moment_matrix_examples(leb01, angelesco):
    assert System([leb01]).moment_matrix((2,)) == [[1, F(1, 2)], [F(1, 2), F(1, 3)]]
    assert angelesco.moment_matrix((1, 1)) == [[1, F(1, 2)], [1, F(5, 2)]]
    assert angelesco.moment_matrix((0, 1)) == [[1]]


def test_normality_examples(angelesco):
    assert angelesco.det((1, 1)) == 2
    assert angelesco.is_normal((1, 1))
    assert not System([ExplicitMoments([0, 1, 2])]).is_normal((1,))
    assert angelesco.is_normal((0, 0))
    assert System([ExplicitMoments([0])]).is_normal((0,))


def test_type2_examples(leb01, angelesco):
    assert System([leb01]).type2_monic((2,)).poly == X * X - X + F(1, 6)
    assert angelesco.type2_monic((1, 1)).poly == X * X - 3 * X + F(7, 6)
    assert angelesco.type2_monic((0, 0)).poly == Poly.const(1)


def test_type1_examples(leb01, angelesco):
    assert angelesco.type1_normalized((1, 1)).polys == (Poly.const(F(-1, 2)), Poly.const(F(1, 2)))
    assert System([leb01]).type1_normalized((1,)).polys == (Poly.const(1),)
    assert angelesco.type1_normalized((1, 0)).polys == (Poly.const(1), Poly())
    with pytest.raises(ZeroIndex):
        angelesco.type1_normalized((0, 0))


def test_perfect_box(leb01, angelesco):
    assert angelesco.is_perfect_box((3, 3)) == (True, [])
    ok, failing = System([leb01, leb01]).is_perfect_box((1, 1))
    assert not ok and (1, 1) in failing
    assert System([ExplicitMoments([0])]).is_perfect_box((0,)) == (True, [])


def test_not_normal_raises():
    s = System([ExplicitMoments([0, 1, 2, 3])])
    with pytest.raises(NotNormal):
        s.type2_monic((1,))
    with pytest.raises(NotNormal):
        s.type1_normalized((1,))
    assert s.type2_kernel((1,)) == [Poly.const(1)]


def test_arity():
    s = System([IntervalLebesgue(0, 1)])
    with pytest.raises(ArityMismatch):
        s.det((1, 1))
    assert unit(3, 2) == (0, 1, 0)
    assert list(index_box((1, 1))) == [(0, 0), (0, 1), (1, 0), (1, 1)]


def systems():
    """Small perfect-ish systems: intervals and discrete measures with rational data."""
    interval = st.tuples(st.integers(-3, 3), st.integers(1, 3)).map(lambda ab: IntervalLebesgue(ab[0], ab[0] + ab[1]))
    masses = st.lists(st.tuples(st.integers(-4, 4), st.integers(1, 3)), min_size=4, max_size=6, unique_by=lambda m: m[0]).map(PointMasses)
    return st.lists(st.one_of(interval, masses), min_size=1, max_size=3).map(System)


@settings(max_examples=40, deadline=None)
@given(systems(), st.data())
def test_oracle_properties(s, data):
    n = tuple(data.draw(st.lists(st.integers(0, 2), min_size=s.r, max_size=s.r)))
    size = sum(n)
    if s.is_normal(n):
        p = s.type2_monic(n).poly
        assert p.degree == size and p.lead == 1
        assert s.type2_violations(n, p) == []
        assert s.type2_kernel(n) == []
        if size:
            a = s.type1_normalized(n).polys
            assert all(aj.degree <= nj - 1 for aj, nj in zip(a, n))
            assert s.type1_violations(n, a) == []
            assert s.type1_pairing(a, size - 1) == 1
    else:
        kernel = s.type2_kernel(n)
        assert kernel
        for q in kernel:
            assert q.degree < size and s.type2_violations(n, q) == []


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 6))
def test_type2_monic_is_unique_on_lebesgue(n):
    s = System([IntervalLebesgue(0, 1)])
    p = s.type2_monic((n,)).poly
    # Any monic degree-n orthogonal polynomial differs from p by a kernel element, and there is none.
    assert s.type2_kernel((n,)) == []
    assert all(s[0].apply(p.shift(q)) == 0 for q in range(n))
