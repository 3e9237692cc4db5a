"""Moment functionals given by lazily generated, memoized moment sequences."""

from __future__ import annotations

import threading
from fractions import Fraction
from typing import Iterable, Sequence

from .arith import Poly, RatLike, RootList, format_rat, to_rat
from .errors import ConfigError, FreeMomentArity, MomentUnavailable


class MomentFunctional:
    """Linear functional on polynomials, ``f[x**k] = moment(k)``.

    Subclasses implement ``_compute(k)``; moments are produced in increasing
    order under a lock, so ``_compute(k)`` may read ``self._cache[:k]``.
    """

    def __init__(self):
        self._cache: list[Fraction] = []
        self._lock = threading.RLock()

    def _compute(self, k: int) -> Fraction:
        raise NotImplementedError

    def moment(self, k: int) -> Fraction:
        if k < 0:
            raise ValueError("moment index must be nonnegative")
        cache = self._cache
        if k < len(cache):
            return cache[k]
        with self._lock:
            while len(cache) <= k:
                cache.append(self._compute(len(cache)))
        return cache[k]

    def moments(self, count: int) -> list[Fraction]:
        if count:
            self.moment(count - 1)
        return self._cache[:count]

    def apply(self, p: Poly) -> Fraction:
        cs = p.coeffs
        if not cs:
            return Fraction(0)
        self.moment(len(cs) - 1)
        cache = self._cache
        return sum((c * cache[i] for i, c in enumerate(cs) if c), Fraction(0))

    __call__ = apply

    def to_json(self) -> dict:
        raise NotImplementedError

    def __getstate__(self):
        state = self.__dict__.copy()
        del state["_lock"]
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)
        self._lock = threading.RLock()

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.to_json()})"


class ExplicitMoments(MomentFunctional):
    def __init__(self, moments: Iterable[RatLike]):
        super().__init__()
        self.data = tuple(to_rat(m) for m in moments)

    def _compute(self, k):
        if k >= len(self.data):
            raise MomentUnavailable(f"only {len(self.data)} explicit moments, moment {k} requested")
        return self.data[k]

    def to_json(self):
        return {"kind": "explicit", "moments": [format_rat(m) for m in self.data]}


class IntervalLebesgue(MomentFunctional):
    """Lebesgue measure on ``[a, b]``."""

    def __init__(self, a: RatLike, b: RatLike):
        super().__init__()
        self.a, self.b = to_rat(a), to_rat(b)

    def _compute(self, k):
        return (self.b ** (k + 1) - self.a ** (k + 1)) / (k + 1)

    def to_json(self):
        return {"kind": "lebesgue", "a": format_rat(self.a), "b": format_rat(self.b)}


class PointMasses(MomentFunctional):
    def __init__(self, masses: Iterable[tuple[RatLike, RatLike]]):
        super().__init__()
        self.masses = tuple((to_rat(w), to_rat(c)) for w, c in masses)

    def _compute(self, k):
        return sum((c * w**k for w, c in self.masses), Fraction(0))

    def to_json(self):
        return {"kind": "masses", "masses": [[format_rat(w), format_rat(c)] for w, c in self.masses]}


class Scaled(MomentFunctional):
    def __init__(self, base: MomentFunctional, factor: RatLike):
        super().__init__()
        self.base, self.factor = base, to_rat(factor)

    def _compute(self, k):
        return self.factor * self.base.moment(k)

    def to_json(self):
        return {"kind": "scaled", "base": self.base.to_json(), "factor": format_rat(self.factor)}


class Sum(MomentFunctional):
    def __init__(self, terms: Sequence[MomentFunctional]):
        super().__init__()
        self.terms = tuple(terms)

    def _compute(self, k):
        return sum((t.moment(k) for t in self.terms), Fraction(0))

    def to_json(self):
        return {"kind": "sum", "terms": [t.to_json() for t in self.terms]}


class ChristoffelOf(MomentFunctional):
    """``Φ·base``: moments ``base[Φ(x) x^k]``."""

    def __init__(self, base: MomentFunctional, phi: RootList):
        super().__init__()
        self.base, self.phi = base, phi
        self._phi_coeffs = phi.poly().coeffs

    def _compute(self, k):
        b = self.base
        return sum((c * b.moment(k + i) for i, c in enumerate(self._phi_coeffs) if c), Fraction(0))

    def to_json(self):
        return {"kind": "christoffel", "base": self.base.to_json(), "phi": self.phi.to_json()}


class RationalPerturb(MomentFunctional):
    """A functional ``g`` with ``Ψ·g = Φ·base``.

    The first ``deg Ψ`` moments are the free moments; with monic
    ``Ψ = x^M + Σ ψ_i x^i`` the rest follow from
    ``g_{p+M} = base[Φ x^p] - Σ_{i<M} ψ_i g_{p+i}``.
    """

    def __init__(self, base: MomentFunctional, phi: RootList, psi: RootList, free: Sequence[RatLike] | None = None):
        super().__init__()
        m = psi.degree
        if free is None:
            free = [0] * m
        if len(free) != m:
            raise FreeMomentArity(f"need {m} free moments for deg Ψ = {m}, got {len(free)}")
        self.base, self.phi, self.psi = base, phi, psi
        self.free = tuple(to_rat(v) for v in free)
        self._phi_coeffs = phi.poly().coeffs
        self._psi_low = psi.poly().coeffs[:-1]

    def _compute(self, k):
        m = len(self._psi_low)
        if k < m:
            return self.free[k]
        p = k - m
        b = self.base
        val = sum((c * b.moment(p + i) for i, c in enumerate(self._phi_coeffs) if c), Fraction(0))
        cache = self._cache
        for i, psi_i in enumerate(self._psi_low):
            if psi_i:
                val -= psi_i * cache[p + i]
        return val

    def to_json(self):
        return {
            "kind": "rational",
            "base": self.base.to_json(),
            "phi": self.phi.to_json(),
            "psi": self.psi.to_json(),
            "free": [format_rat(v) for v in self.free],
        }


def moment(f: MomentFunctional, k: int) -> Fraction:
    return f.moment(k)


def apply(f: MomentFunctional, p: Poly) -> Fraction:
    return f.apply(p)


def rational_perturb(base: MomentFunctional, phi: RootList, psi: RootList, free: Sequence[RatLike] | None = None) -> RationalPerturb:
    return RationalPerturb(base, phi, psi, free)


def christoffel(base: MomentFunctional, phi: RootList) -> ChristoffelOf:
    return ChristoffelOf(base, phi)


def uvarov_of(base: MomentFunctional, masses: Iterable[tuple[RatLike, RatLike]]) -> MomentFunctional:
    """``base`` plus point masses ``c·δ_w``."""
    masses = [(to_rat(w), to_rat(c)) for w, c in masses]
    if len({w for w, _ in masses}) != len(masses):
        raise ValueError("point mass locations must be distinct")
    if not masses:
        return base
    return Sum([base, PointMasses(masses)])


def parse_roots(data) -> RootList:
    """``[[root, multiplicity], ...]``; a bare root means multiplicity 1."""
    if data is None:
        return RootList()
    items = []
    for entry in data:
        if isinstance(entry, (list, tuple)):
            if len(entry) != 2:
                raise ConfigError(f"root entry must be [root, multiplicity], got {entry!r}")
            root, mult = entry
            if not isinstance(mult, int) or isinstance(mult, bool) or mult < 1:
                raise ConfigError(f"bad multiplicity {mult!r}")
            items.append((to_rat(root), mult))
        else:
            items.append((to_rat(entry), 1))
    return RootList(items)


_FIELDS = {
    "explicit": {"moments"},
    "lebesgue": {"a", "b"},
    "masses": {"masses"},
    "scaled": {"base", "factor"},
    "sum": {"terms"},
    "christoffel": {"base", "phi"},
    "rational": {"base", "phi", "psi", "free"},
    "uvarov": {"base", "masses"},
}


def functional_from_json(data: dict) -> MomentFunctional:
    """Build a functional from its JSON description (see :meth:`to_json`)."""
    if not isinstance(data, dict) or "kind" not in data:
        raise ConfigError(f"functional description needs a 'kind': {data!r}")
    kind = data["kind"]
    if kind not in _FIELDS:
        raise ConfigError(f"unknown functional kind {kind!r}")
    extra = set(data) - _FIELDS[kind] - {"kind"}
    if extra:
        raise ConfigError(f"unknown fields for {kind!r}: {sorted(extra)}")
    try:
        if kind == "explicit":
            return ExplicitMoments(data["moments"])
        if kind == "lebesgue":
            return IntervalLebesgue(data["a"], data["b"])
        if kind == "masses":
            return PointMasses(data["masses"])
        if kind == "scaled":
            return Scaled(functional_from_json(data["base"]), data["factor"])
        if kind == "sum":
            return Sum([functional_from_json(t) for t in data["terms"]])
        if kind == "christoffel":
            return ChristoffelOf(functional_from_json(data["base"]), parse_roots(data["phi"]))
        if kind == "uvarov":
            return uvarov_of(functional_from_json(data["base"]), data["masses"])
        return RationalPerturb(
            functional_from_json(data["base"]),
            parse_roots(data.get("phi")),
            parse_roots(data.get("psi")),
            data.get("free"),
        )
    except KeyError as exc:
        raise ConfigError(f"{kind!r} functional is missing field {exc}") from None
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad {kind!r} functional: {exc}") from None
