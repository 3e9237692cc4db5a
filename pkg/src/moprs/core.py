"""Direct moment-matrix computation of type I and type II multiple orthogonal polynomials.

This is the reference route: every polynomial here comes from solving the
stacked Hankel system of the moments, never from recurrences or from the
determinantal formulas in :mod:`moprs.transforms`.
"""

from __future__ import annotations

import itertools
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

from .arith import Poly, det_rat, nullspace_rat, solve_rat
from .errors import ArityMismatch, NotNormal, SingularMatrix, ZeroIndex
from .functionals import MomentFunctional

MultiIndex = tuple[int, ...]


def as_index(n: Sequence[int], r: int | None = None) -> MultiIndex:
    idx = tuple(int(v) for v in n)
    if any(v < 0 for v in idx):
        raise ValueError(f"multi-index {idx} has a negative entry")
    if r is not None and len(idx) != r:
        raise ArityMismatch(f"multi-index {idx} has length {len(idx)}, system has r = {r}")
    return idx


def unit(r: int, k: int) -> MultiIndex:
    """Unit multi-index ``e_k`` (``k`` is 1-based)."""
    return tuple(1 if i == k - 1 else 0 for i in range(r))


def index_box(nmax: Sequence[int]) -> Iterator[MultiIndex]:
    """All ``n <= nmax`` in lexicographic order."""
    return itertools.product(*(range(v + 1) for v in nmax))


@dataclass(frozen=True)
class TypeIVector:
    index: MultiIndex
    polys: tuple[Poly, ...]
    normalized: bool = False

    def __iter__(self):
        return iter(self.polys)

    def __getitem__(self, j: int) -> Poly:
        return self.polys[j]

    def scaled(self, c: Fraction) -> "TypeIVector":
        return TypeIVector(self.index, tuple(p * c for p in self.polys), self.normalized)


@dataclass(frozen=True)
class TypeIIPoly:
    index: MultiIndex
    poly: Poly
    monic: bool = False


class System:
    """Ordered system ``(μ_1, ..., μ_r)`` with memoized per-index results."""

    def __init__(self, functionals: Sequence[MomentFunctional]):
        if not functionals:
            raise ValueError("a system needs at least one functional")
        self.functionals = tuple(functionals)
        self.r = len(self.functionals)
        self._lock = threading.Lock()
        self._det: dict[MultiIndex, Fraction] = {}
        self._type1: dict[MultiIndex, TypeIVector] = {}
        self._type2: dict[MultiIndex, TypeIIPoly] = {}

    def __len__(self) -> int:
        return self.r

    def __getitem__(self, j: int) -> MomentFunctional:
        return self.functionals[j]

    def __iter__(self):
        return iter(self.functionals)

    def moment_matrix(self, n: Sequence[int]) -> list[list[Fraction]]:
        n = as_index(n, self.r)
        size = sum(n)
        rows = []
        for mu, nj in zip(self.functionals, n):
            if nj:
                nu = mu.moments(nj + size - 1)
                for i in range(nj):
                    rows.append(nu[i:i + size])
        return rows

    def det(self, n: Sequence[int]) -> Fraction:
        n = as_index(n, self.r)
        cached = self._det.get(n)
        if cached is None:
            cached = det_rat(self.moment_matrix(n)) if sum(n) else Fraction(1)
            with self._lock:
                self._det[n] = cached
        return cached

    def is_normal(self, n: Sequence[int]) -> bool:
        return self.det(n) != 0

    def type2_monic(self, n: Sequence[int]) -> TypeIIPoly:
        n = as_index(n, self.r)
        cached = self._type2.get(n)
        if cached is not None:
            return cached
        size = sum(n)
        if size == 0:
            res = TypeIIPoly(n, Poly.const(1), True)
        else:
            mat = self.moment_matrix(n)
            rhs = []
            for mu, nj in zip(self.functionals, n):
                for i in range(nj):
                    rhs.append(-mu.moment(i + size))
            try:
                kappa = solve_rat(mat, rhs)
            except SingularMatrix:
                raise NotNormal(f"index {n} is not normal") from None
            res = TypeIIPoly(n, Poly(list(kappa) + [1]), True)
        with self._lock:
            self._type2[n] = res
        return res

    def type1_normalized(self, n: Sequence[int]) -> TypeIVector:
        n = as_index(n, self.r)
        cached = self._type1.get(n)
        if cached is not None:
            return cached
        size = sum(n)
        if size == 0:
            raise ZeroIndex("type I normalization is undefined at n = 0")
        mat = self.moment_matrix(n)
        transposed = [list(col) for col in zip(*mat)]
        rhs = [Fraction(0)] * (size - 1) + [Fraction(1)]
        try:
            coef = solve_rat(transposed, rhs)
        except SingularMatrix:
            raise NotNormal(f"index {n} is not normal") from None
        polys = []
        pos = 0
        for nj in n:
            polys.append(Poly(coef[pos:pos + nj]))
            pos += nj
        res = TypeIVector(n, tuple(polys), True)
        with self._lock:
            self._type1[n] = res
        return res

    def type2_kernel(self, n: Sequence[int]) -> list[Poly]:
        """Nonzero type II solutions of degree below ``|n|`` (a basis).

        Empty exactly when ``n`` is normal.
        """
        n = as_index(n, self.r)
        if sum(n) == 0:
            return []
        return [Poly(v) for v in nullspace_rat(self.moment_matrix(n), sum(n))]

    def is_perfect_box(self, nmax: Sequence[int]) -> tuple[bool, list[MultiIndex]]:
        nmax = as_index(nmax, self.r)
        failing = [n for n in index_box(nmax) if not self.is_normal(n)]
        return not failing, failing

    def type2_violations(self, n: Sequence[int], p: Poly) -> list[tuple[int, int, Fraction]]:
        """Type II conditions ``μ_j[P x^q] = 0`` (``q < n_j``) that fail, as ``(j, q, value)``."""
        n = as_index(n, self.r)
        out = []
        for j, (mu, nj) in enumerate(zip(self.functionals, n), start=1):
            for q in range(nj):
                v = mu.apply(p.shift(q))
                if v:
                    out.append((j, q, v))
        return out

    def type1_pairing(self, a: Sequence[Poly], q: int) -> Fraction:
        """``Σ_j μ_j[A^{(j)} x^q]``."""
        return sum((mu.apply(aj.shift(q)) for mu, aj in zip(self.functionals, a)), Fraction(0))

    def type1_violations(self, n: Sequence[int], a: Sequence[Poly]) -> list[tuple[int, Fraction]]:
        """Type I conditions (``q <= |n| - 2``) that fail, as ``(q, value)``."""
        n = as_index(n, self.r)
        out = []
        for q in range(sum(n) - 1):
            v = self.type1_pairing(a, q)
            if v:
                out.append((q, v))
        return out


def moment_matrix(s: System, n: Sequence[int]) -> list[list[Fraction]]:
    return s.moment_matrix(n)


def is_normal(s: System, n: Sequence[int]) -> bool:
    return s.is_normal(n)


def type2_monic(s: System, n: Sequence[int]) -> TypeIIPoly:
    return s.type2_monic(n)


def type1_normalized(s: System, n: Sequence[int]) -> TypeIVector:
    return s.type1_normalized(n)


def is_perfect_box(s: System, nmax: Sequence[int]) -> tuple[bool, list[MultiIndex]]:
    return s.is_perfect_box(nmax)
