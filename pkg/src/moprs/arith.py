"""Exact rational scalars, dense polynomials, root multisets and determinants.

Scalars are :class:`fractions.Fraction`.  Integer-level elimination is
delegated to :mod:`moprs.kernels`.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence, Union

from . import kernels
from .errors import NegativeMultiplicity, NonzeroRemainder, SingularMatrix

Rat = Fraction
RatLike = Union[int, Fraction, str]

#: Degree of the zero polynomial.
DEG_ZERO = -math.inf


def to_rat(value: RatLike) -> Fraction:
    """Parse an int, Fraction or ``"p/q"`` string into an exact rational."""
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if "/" in text:
            num, _, den = text.partition("/")
            d = int(den)
            if d == 0:
                raise ZeroDivisionError(f"zero denominator in {value!r}")
            return Fraction(int(num), d)
        return Fraction(int(text))
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rat(value: Fraction) -> str:
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


class Poly:
    """Immutable dense univariate polynomial over the rationals.

    ``coeffs[i]`` is the coefficient of ``x**i``; trailing zeros are stripped,
    so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Iterable[RatLike] = ()):
        cs = [to_rat(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)
        self._hash = None

    @classmethod
    def const(cls, c: RatLike) -> "Poly":
        return cls((c,))

    @classmethod
    def x(cls) -> "Poly":
        return cls((0, 1))

    @classmethod
    def monomial(cls, k: int, c: RatLike = 1) -> "Poly":
        return cls([0] * k + [c])

    @property
    def degree(self) -> Union[int, float]:
        """Degree, or :data:`DEG_ZERO` for the zero polynomial."""
        return len(self.coeffs) - 1 if self.coeffs else DEG_ZERO

    @property
    def lead(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == Poly.const(other).coeffs
        return NotImplemented

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __add__(self, other) -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly(-c for c in self.coeffs)

    def __sub__(self, other) -> "Poly":
        other = _as_poly(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return _as_poly(other) - self

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly()
            return Poly(c * other for c in self.coeffs)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly()
        out = [Fraction(0)] * (len(a) + len(b) - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    out[i + j] += ai * bj
        return Poly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "Poly":
        if isinstance(scalar, (int, Fraction)):
            return Poly(c / scalar for c in self.coeffs)
        return NotImplemented

    def shift(self, k: int) -> "Poly":
        """Multiply by ``x**k``."""
        if not self.coeffs:
            return self
        return Poly((0,) * k + self.coeffs)

    def derivative(self, order: int = 1) -> "Poly":
        cs = self.coeffs
        for _ in range(order):
            cs = tuple(i * c for i, c in enumerate(cs) if i)
        return Poly(cs)

    def __call__(self, x: RatLike) -> Fraction:
        x = to_rat(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def divmod(self, den: "Poly") -> tuple["Poly", "Poly"]:
        if den.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dd = len(den.coeffs) - 1
        lead = den.coeffs[-1]
        if len(rem) - 1 < dd:
            return Poly(), self
        quot = [Fraction(0)] * (len(rem) - dd)
        for k in range(len(rem) - 1 - dd, -1, -1):
            q = rem[k + dd] / lead
            quot[k] = q
            if q:
                for i, c in enumerate(den.coeffs):
                    rem[k + i] -= q * c
        return Poly(quot), Poly(rem[:dd])

    def __str__(self) -> str:
        return render_poly(self)

    def __repr__(self) -> str:
        return f"Poly({render_poly(self)!r})"


def _as_poly(value):
    if isinstance(value, Poly):
        return value
    if isinstance(value, (int, Fraction)):
        return Poly.const(value)
    return NotImplemented


def render_poly(p: Poly, var: str = "x") -> str:
    """Human-readable form, highest degree first, e.g. ``x^2 - x + 1/6``."""
    if p.is_zero():
        return "0"
    parts = []
    for k in range(len(p.coeffs) - 1, -1, -1):
        c = p.coeffs[k]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if k == 0:
            body = format_rat(mag)
        else:
            mono = var if k == 1 else f"{var}^{k}"
            body = mono if mag == 1 else f"{format_rat(mag)}*{mono}"
        parts.append((sign, body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


def poly_eval(p: Poly, x: RatLike, order: int = 0) -> Fraction:
    """Value of the ``order``-th derivative of ``p`` at ``x``."""
    if order < 0:
        raise ValueError("derivative order must be nonnegative")
    return (p.derivative(order) if order else p)(x)


def poly_divide_exact(num: Poly, den: Poly) -> Poly:
    q, r = num.divmod(den)
    if not r.is_zero():
        raise NonzeroRemainder(f"({num}) is not divisible by ({den}); remainder {r}")
    return q


class RootList:
    """Multiset of rational roots in compact ``(root, multiplicity)`` form.

    Repeated roots given on input are merged; the order of first appearance is
    kept and fixes the expansion order.
    """

    __slots__ = ("items",)

    def __init__(self, items: Iterable[tuple[RatLike, int]] = ()):
        merged: dict[Fraction, int] = {}
        for root, mult in items:
            mult = int(mult)
            if mult < 0:
                raise NegativeMultiplicity(f"negative multiplicity {mult}")
            if mult == 0:
                continue
            r = to_rat(root)
            merged[r] = merged.get(r, 0) + mult
        self.items: tuple[tuple[Fraction, int], ...] = tuple(merged.items())

    @classmethod
    def of(cls, *roots: RatLike) -> "RootList":
        """Build from roots listed with repetition."""
        return cls((r, 1) for r in roots)

    @property
    def degree(self) -> int:
        return sum(m for _, m in self.items)

    def __len__(self) -> int:
        return self.degree

    def __bool__(self) -> bool:
        return bool(self.items)

    def multiplicity(self, root: RatLike) -> int:
        return dict(self.items).get(to_rat(root), 0)

    def expanded(self) -> list[tuple[Fraction, int]]:
        """Roots repeated by multiplicity, each paired with its derivative order.

        The derivative order of an entry is the number of earlier entries with
        the same root.
        """
        return [(r, l) for r, m in self.items for l in range(m)]

    def poly(self) -> Poly:
        return poly_from_roots(self)

    def __mul__(self, other: "RootList") -> "RootList":
        return RootList(self.items + other.items)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RootList):
            return NotImplemented
        return dict(self.items) == dict(other.items)

    def __hash__(self) -> int:
        return hash(frozenset(self.items))

    def __repr__(self) -> str:
        inner = ", ".join(f"({format_rat(r)}, {m})" for r, m in self.items)
        return f"RootList([{inner}])"

    def to_json(self) -> list:
        return [[format_rat(r), m] for r, m in self.items]


def poly_from_roots(roots: RootList) -> Poly:
    p = Poly.const(1)
    for r, m in roots.items:
        lin = Poly((-r, 1))
        for _ in range(m):
            p = p * lin
    return p


def root_lcm(*lists: RootList) -> RootList:
    """Least common multiple: per-root maximum multiplicity."""
    order: dict[Fraction, int] = {}
    for rl in lists:
        for r, m in rl.items:
            order[r] = max(order.get(r, 0), m)
    return RootList(order.items())


def root_quotient(a: RootList, b: RootList) -> RootList:
    """Multiset difference ``a / b``; every root of ``b`` must divide ``a``."""
    mult = dict(a.items)
    for r, m in b.items:
        left = mult.get(r, 0) - m
        if left < 0:
            raise NegativeMultiplicity(f"root {format_rat(r)} has multiplicity {mult.get(r, 0)} < {m}")
        mult[r] = left
    return RootList((r, mult[r]) for r, _ in a.items)


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], int]:
    """Scale each row to integers; return the rows and the product of scales."""
    out = []
    scale = 1
    for row in rows:
        den = 1
        for v in row:
            d = v.denominator
            if d != 1:
                den = den * d // math.gcd(den, d)
        out.append([v.numerator * (den // v.denominator) for v in row])
        scale *= den
    return out, scale


def det_rat(m: Sequence[Sequence[RatLike]]) -> Fraction:
    """Exact determinant by fraction-free elimination."""
    rows = [[to_rat(v) for v in row] for row in m]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ValueError("determinant of a non-square matrix")
    irows, scale = _integer_rows(rows)
    return Fraction(kernels.bareiss_det(irows), scale)


def solve_rat(a: Sequence[Sequence[RatLike]], b: Sequence[RatLike]) -> list[Fraction]:
    """Unique solution of ``a x = b``; raises :class:`SingularMatrix` otherwise."""
    rows = [[to_rat(v) for v in row] + [to_rat(bi)] for row, bi in zip(a, b)]
    n = len(rows)
    if any(len(r) != n + 1 for r in rows):
        raise ValueError("solve needs a square system")
    irows, _ = _integer_rows(rows)
    res = kernels.bareiss_solve([r[:-1] for r in irows], [r[-1] for r in irows])
    if res is None:
        raise SingularMatrix(f"singular {n}x{n} system")
    nums, den = res
    return [Fraction(v, den) for v in nums]


def rank_rat(m: Sequence[Sequence[RatLike]]) -> int:
    rows = [[to_rat(v) for v in row] for row in m]
    if not rows or not rows[0]:
        return 0
    irows, _ = _integer_rows(rows)
    return kernels.bareiss_rank(irows)


def nullspace_rat(m: Sequence[Sequence[RatLike]], ncols: int | None = None) -> list[list[Fraction]]:
    """Basis of the right kernel via reduced row echelon form."""
    rows = [[to_rat(v) for v in row] for row in m]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if pr is None:
            continue
        rows[r], rows[pr] = rows[pr], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [vi - f * vr for vi, vr in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -rows[i][fc]
        basis.append(v)
    return basis


def det_poly_bordered(first_row: Sequence[Poly], body: Sequence[Sequence[RatLike]]) -> Poly:
    """Determinant of a matrix whose first row is polynomial and the rest numeric.

    Cofactor expansion along the first row.
    """
    k = len(first_row)
    rows = [[to_rat(v) for v in row] for row in body]
    if len(rows) != k - 1 or any(len(r) != k for r in rows):
        raise ValueError(f"bordered determinant needs a {k - 1}x{k} body")
    total = Poly()
    for i, p in enumerate(first_row):
        if p.is_zero():
            continue
        minor = [row[:i] + row[i + 1:] for row in rows]
        d = det_rat(minor)
        if d:
            total = total + p * (d if i % 2 == 0 else -d)
    return total
