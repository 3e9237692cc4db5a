"""Determinantal formulas for rational perturbations ``Ψ_j μ̃_j = Φ_j μ_j``.

Type I uses a common denominator ``Ψ = lcm(Ψ_j)`` with numerators
``Φ_j^* = Φ_j Ψ/Ψ_j``; type II uses a common numerator ``Φ = lcm(Φ_j)`` with
denominators ``Ψ_j^* = Ψ_j Φ/Φ_j``.  Repeated roots contribute derivative rows
in expansion order.

Both routes return the raw determinant together with ``D_n``, the minor that
normalizes it; division by ``D_n`` happens only in ``normalized()``.
"""

from __future__ import annotations

import math
import weakref
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .arith import (
    Poly,
    RatLike,
    RootList,
    det_rat,
    format_rat,
    poly_divide_exact,
    poly_eval,
    rank_rat,
    render_poly,
    root_lcm,
    root_quotient,
    solve_rat,
    to_rat,
)
from .core import MultiIndex, System, TypeIIPoly, TypeIVector, as_index, unit
from .errors import ArityMismatch, ConfigError, FreeMomentArity, NotAdmissible, NotNormal, ZeroIndex
from .functionals import MomentFunctional, RationalPerturb, parse_roots
from .indexseq import DECREASING, INCREASING, IndexSeq, find_witnesses, frame


@dataclass(frozen=True)
class ComponentSpec:
    phi: RootList = field(default_factory=RootList)
    psi: RootList = field(default_factory=RootList)
    free: tuple[Fraction, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "free", tuple(to_rat(v) for v in self.free))
        if len(self.free) != self.psi.degree:
            raise FreeMomentArity(f"deg Ψ = {self.psi.degree} needs {self.psi.degree} free moments, got {len(self.free)}")


@dataclass(frozen=True)
class ReducedSpecI:
    psi: RootList
    phi_star: tuple[RootList, ...]


@dataclass(frozen=True)
class ReducedSpecII:
    phi: RootList
    psi_star: tuple[RootList, ...]


@dataclass(frozen=True)
class TransformSpec:
    components: tuple[ComponentSpec, ...]

    @property
    def r(self) -> int:
        return len(self.components)

    @classmethod
    def build(cls, components: Sequence[dict]) -> "TransformSpec":
        """Components given as dicts with optional ``phi``, ``psi``, ``free``."""
        return cls(tuple(ComponentSpec(c.get("phi", RootList()), c.get("psi", RootList()), tuple(c.get("free", ()) or ())) for c in components))

    @classmethod
    def christoffel(cls, phis: Sequence[RootList]) -> "TransformSpec":
        return cls(tuple(ComponentSpec(phi=p) for p in phis))

    @classmethod
    def geronimus(cls, psis: Sequence[RootList], free: Sequence[Sequence[RatLike]] | None = None) -> "TransformSpec":
        if free is None:
            free = [[0] * p.degree for p in psis]
        return cls(tuple(ComponentSpec(psi=p, free=tuple(f)) for p, f in zip(psis, free)))

    @classmethod
    def uvarov(cls, base: System, masses: Sequence[Sequence[tuple[RatLike, RatLike]]]) -> "TransformSpec":
        """Point masses ``Σ_k c_{j,k} δ_{z_k}`` added to each ``μ_j``.

        Encoded as ``Φ_j = Ψ_j = Π (x - z_k)`` with the free moments of
        ``μ_j + Σ c δ``.
        """
        comps = []
        for mu, ms in zip(base, masses):
            ms = [(to_rat(z), to_rat(c)) for z, c in ms]
            roots = RootList((z, 1) for z, _ in ms)
            if roots.degree != len(ms):
                raise ValueError("point mass locations must be distinct within a component")
            free = tuple(mu.moment(i) + sum((c * z**i for z, c in ms), Fraction(0)) for i in range(len(ms)))
            comps.append(ComponentSpec(roots, roots, free))
        return cls(tuple(comps))

    def reduced_I(self) -> ReducedSpecI:
        psi = root_lcm(*(c.psi for c in self.components))
        return ReducedSpecI(psi, tuple(c.phi * root_quotient(psi, c.psi) for c in self.components))

    def reduced_II(self) -> ReducedSpecII:
        phi = root_lcm(*(c.phi for c in self.components))
        return ReducedSpecII(phi, tuple(c.psi * root_quotient(phi, c.phi) for c in self.components))

    def to_json(self) -> dict:
        return {
            "components": [
                {"phi": c.phi.to_json(), "psi": c.psi.to_json(), "free": [format_rat(v) for v in c.free]}
                for c in self.components
            ]
        }


def spec_from_json(data: dict, base: System) -> TransformSpec:
    """``{"components": [{"phi": ..., "psi": ..., "free": ...} | {"masses": ...}, ...]}``."""
    if not isinstance(data, dict) or set(data) - {"components"}:
        raise ConfigError("transform must be an object with a single 'components' field")
    comps = data.get("components")
    if not isinstance(comps, list) or len(comps) != base.r:
        raise ConfigError(f"transform needs one component per functional (r = {base.r})")
    out = []
    try:
        for j, c in enumerate(comps):
            if not isinstance(c, dict):
                raise ConfigError(f"component {j + 1} must be an object")
            extra = set(c) - {"phi", "psi", "free", "masses"}
            if extra:
                raise ConfigError(f"unknown component fields {sorted(extra)}")
            if "masses" in c:
                if set(c) & {"phi", "psi", "free"}:
                    raise ConfigError("'masses' cannot be combined with phi/psi/free")
                out.append(TransformSpec.uvarov(System([base[j]]), [c["masses"]]).components[0])
                continue
            psi = parse_roots(c.get("psi"))
            free = c.get("free")
            if free is None:
                free = [0] * psi.degree
            out.append(ComponentSpec(parse_roots(c.get("phi")), psi, tuple(to_rat(v) for v in free)))
    except FreeMomentArity as exc:
        raise ConfigError(str(exc)) from None
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(f"bad transform: {exc}") from None
    return TransformSpec(tuple(out))


def make_transformed_system(s: System, spec: TransformSpec) -> System:
    if spec.r != s.r:
        raise ArityMismatch(f"spec has {spec.r} components, system has {s.r}")
    return System([RationalPerturb(mu, c.phi, c.psi, c.free) for mu, c in zip(s, spec.components)])


# ---------------------------------------------------------------------------
# second-kind values


_kernel_cache: dict[tuple[RootList, Fraction, int], Poly] = {}


def _kernel(roots: RootList, w: Fraction, l: int) -> Poly:
    """``l! Ψ(x) / (x - w)^{l+1}`` as an exact polynomial."""
    key = (roots, w, l)
    k = _kernel_cache.get(key)
    if k is None:
        den = Poly.const(1)
        lin = Poly((-w, 1))
        for _ in range(l + 1):
            den = den * lin
        k = poly_divide_exact(roots.poly(), den) * math.factorial(l)
        _kernel_cache[key] = k
    return k


def b_values(geronimus: Sequence[MomentFunctional], a: Sequence[Poly], psi: RootList) -> list[Fraction]:
    """Type I second-kind values at the expanded roots of ``psi``."""
    out = []
    for w, l in psi.expanded():
        ker = _kernel(psi, w, l)
        out.append(sum((g.apply(aj * ker) for g, aj in zip(geronimus, a) if aj), Fraction(0)))
    return out


def q_values(geronimus: MomentFunctional, p: Poly, psi: RootList) -> list[Fraction]:
    """Type II second-kind values of one component at the expanded roots of ``psi``."""
    return [geronimus.apply(p * _kernel(psi, w, l)) for w, l in psi.expanded()]


def _power_derivative(w: Fraction, q: int, l: int) -> Fraction:
    """``d^l/dz^l z^q`` at ``z = w``."""
    if l > q:
        return Fraction(0)
    return Fraction(math.perm(q, l)) * w ** (q - l)


def _cofactors(body: list[list[Fraction]], ncols: int) -> list[Fraction]:
    """Signed minors of the first row of a bordered matrix."""
    return [(det_rat([row[:i] + row[i + 1:] for row in body]) * (1 if i % 2 == 0 else -1)) for i in range(ncols)]


# ---------------------------------------------------------------------------
# results


@dataclass(frozen=True)
class Column:
    """A determinant column: a real multi-index or a virtual slot.

    Virtual type I slots carry the power ``q`` of ``z^q``; virtual type II
    slots carry the component ``j`` (1-based) and power ``q``.
    """

    index: MultiIndex | None = None
    power: int | None = None
    component: int | None = None

    @property
    def virtual(self) -> bool:
        return self.index is None

    def label(self) -> str:
        if self.index is not None:
            return "(" + ",".join(map(str, self.index)) + ")"
        if self.component is None:
            return f"z^{self.power}"
        return f"W{self.component}:z^{self.power}"


@dataclass
class TransformResultI:
    index: MultiIndex
    raw: TypeIVector
    dn: Fraction
    columns: list[Column]
    body: list[list[Fraction]]
    row_labels: list[str]

    def normalized(self) -> TypeIVector:
        if self.dn == 0:
            raise NotNormal(f"D_n = 0 at {self.index}")
        return TypeIVector(self.index, tuple(p / self.dn for p in self.raw.polys), True)


@dataclass
class TransformResultII:
    index: MultiIndex
    raw: TypeIIPoly
    dn: Fraction
    columns: list[Column]
    body: list[list[Fraction]]
    row_labels: list[str]

    def normalized(self) -> TypeIIPoly:
        if self.dn == 0:
            raise NotNormal(f"D_n = 0 at {self.index}")
        return TypeIIPoly(self.index, self.raw.poly / self.dn, True)


QOverride = Callable[[int, int, MultiIndex, Poly], Fraction]


class RationalTransform:
    """A base system together with a rational perturbation of it."""

    def __init__(self, base: System, spec: TransformSpec):
        self.base = base
        self.spec = spec
        self.tilde = make_transformed_system(base, spec)
        self.red1 = spec.reduced_I()
        self.red2 = spec.reduced_II()
        self._gero: dict = {}

    @property
    def r(self) -> int:
        return self.base.r

    # -- Geronimus functionals ------------------------------------------------

    def geronimus(self, side: str, choice: Sequence[Sequence[RatLike]] | None = None) -> list[MomentFunctional]:
        """Functionals ``g_j`` with ``Φ_j^* g_j = μ̃_j`` (type I) or ``Φ g_j = μ̃_j`` (type II)."""
        if side in ("I", "typeI"):
            side, inverted = "I", list(self.red1.phi_star)
        elif side in ("II", "typeII"):
            side, inverted = "II", [self.red2.phi] * self.r
        else:
            raise ValueError(f"unknown side {side!r}")
        if choice is None:
            choice = [[0] * p.degree for p in inverted]
        if len(choice) != self.r:
            raise ArityMismatch(f"Geronimus choice has {len(choice)} components, need {self.r}")
        key = (side, tuple(tuple(to_rat(v) for v in c) for c in choice))
        cached = self._gero.get(key)
        if cached is not None:
            return cached
        out = []
        for mu_t, inv, ch in zip(self.tilde, inverted, key[1]):
            if len(ch) != inv.degree:
                raise FreeMomentArity(f"Geronimus choice needs {inv.degree} free moments, got {len(ch)}")
            out.append(mu_t if inv.degree == 0 else RationalPerturb(mu_t, RootList(), inv, ch))
        self._gero[key] = out
        return out

    # -- default sequences -----------------------------------------------------

    def default_seq_I(self, n: Sequence[int], tie_break: str = "interleaved", kind: str = "frame") -> IndexSeq:
        n = as_index(n, self.r)
        big_m = self.red1.psi.degree
        target = tuple(a + p.degree for a, p in zip(n, self.red1.phi_star))
        if sum(n) <= big_m:
            start = (0,) * self.r
        else:
            m = list(n)
            k = 0
            for _ in range(big_m):
                while m[k % self.r] == 0:
                    k += 1
                m[k % self.r] -= 1
                k += 1
            start = tuple(m)
        return _make_seq(start, target, tie_break, kind)

    def default_seq_II(self, n: Sequence[int], tie_break: str = "interleaved", kind: str = "frame") -> IndexSeq:
        n = as_index(n, self.r)
        big_n = self.red2.phi.degree
        start = tuple(a + big_n * e for a, e in zip(n, unit(self.r, 1)))
        target = tuple(a - min(a, p.degree) for a, p in zip(n, self.red2.psi_star))
        return _make_seq(start, target, tie_break, kind)

    # -- type I ----------------------------------------------------------------

    def type1(self, n: Sequence[int], seq: IndexSeq | None = None, choice=None) -> TransformResultI:
        n = as_index(n, self.r)
        size = sum(n)
        if size == 0:
            raise ZeroIndex("type I formula needs n != 0")
        psi, phi_star = self.red1.psi, self.red1.phi_star
        big_m = psi.degree
        target = tuple(a + p.degree for a, p in zip(n, phi_star))
        total_n = sum(p.degree for p in phi_star)
        if seq is None:
            seq = self.default_seq_I(n)
        pts = list(seq.points)
        columns: list[Column] = []
        if size > big_m:
            start = pts[0]
            if sum(start) != size - big_m:
                raise NotAdmissible(f"type I sequence must start at |m| = {size - big_m}, got {start}")
            expected = total_n + big_m + 1
        else:
            if any(pts[0]):
                raise NotAdmissible("for |n| <= deg Ψ the type I sequence must start at 0")
            expected = total_n + size + 1
            columns.extend(Column(power=big_m - size - j) for j in range(big_m - size))
            columns.append(Column(power=0))
        if len(pts) != expected:
            raise NotAdmissible(f"type I sequence needs {expected} indices, got {len(pts)}")
        if any(a > b for a, b in zip(pts[0], target)) or find_witnesses(pts, pts[0], target, INCREASING) is None:
            raise NotAdmissible(f"sequence is not admissible from {pts[0]} towards {target}")
        real = pts if size > big_m else pts[1:]
        columns.extend(Column(index=p) for p in real)

        gero = self.geronimus("I", choice)
        vecs: list[TypeIVector | None] = []
        bvals: list[list[Fraction] | None] = []
        for col in columns:
            if col.virtual:
                vecs.append(None)
                bvals.append(None)
            else:
                a = self.base.type1_normalized(col.index)
                vecs.append(a)
                bvals.append(b_values(gero, a.polys, psi))

        body: list[list[Fraction]] = []
        labels: list[str] = []
        for i, roots in enumerate(phi_star):
            for z, l in roots.expanded():
                labels.append(f"A{i + 1}{_tick(l)}({format_rat(z)})")
                body.append([Fraction(0) if v is None else poly_eval(v.polys[i], z, l) for v in vecs])
        for k, (w, l) in enumerate(psi.expanded()):
            labels.append(f"B{_tick(l)}({format_rat(w)})")
            body.append([
                _power_derivative(w, col.power, l) if col.virtual else bv[k]
                for col, bv in zip(columns, bvals)
            ])

        cof = _cofactors(body, len(columns))
        polys = []
        for j in range(self.r):
            acc = Poly()
            for c, v in zip(cof, vecs):
                if c and v is not None and v.polys[j]:
                    acc = acc + v.polys[j] * c
            polys.append(poly_divide_exact(acc, phi_star[j].poly()))
        # With virtual columns the leading slot carries z^{M-|n|}; pairing the
        # result with x^{|n|-1} then picks up -cof[0], not +cof[0].
        dn = cof[0] if size > big_m else -cof[0]
        return TransformResultI(n, TypeIVector(n, tuple(polys), False), dn, columns, body, labels)

    # -- type II ---------------------------------------------------------------

    def type2(self, n: Sequence[int], seq: IndexSeq | None = None, choice=None, q_override: QOverride | None = None) -> TransformResultII:
        n = as_index(n, self.r)
        phi, psi_star = self.red2.phi, self.red2.psi_star
        big_n = phi.degree
        m_star = [min(a, p.degree) for a, p in zip(n, psi_star)]
        target = tuple(a - b for a, b in zip(n, m_star))
        if seq is None:
            seq = self.default_seq_II(n)
        pts = list(seq.points)
        start = pts[0]
        if sum(start) != sum(n) + big_n:
            raise NotAdmissible(f"type II sequence must start at |m| = {sum(n) + big_n}, got {start}")
        expected = big_n + sum(m_star) + 1
        if len(pts) != expected:
            raise NotAdmissible(f"type II sequence needs {expected} indices, got {len(pts)}")
        if any(a < b for a, b in zip(start, target)) or find_witnesses(pts, start, target, DECREASING) is None:
            raise NotAdmissible(f"sequence is not admissible from {start} towards {target}")
        columns = [Column(index=p) for p in pts]
        for j, (a, p) in enumerate(zip(n, psi_star), start=1):
            columns.extend(Column(power=q, component=j) for q in range(p.degree - a))

        gero = self.geronimus("II", choice)
        polys: list[Poly | None] = []
        qvals: list[list[list[Fraction]] | None] = []
        for col in columns:
            if col.virtual:
                polys.append(None)
                qvals.append(None)
                continue
            p = self.base.type2_monic(col.index).poly
            polys.append(p)
            if q_override is None:
                qvals.append([q_values(g, p, roots) for g, roots in zip(gero, psi_star)])
            else:
                qvals.append([
                    [q_override(j, k, col.index, p) for k in range(roots.degree)]
                    for j, roots in enumerate(psi_star, start=1)
                ])

        body: list[list[Fraction]] = []
        labels: list[str] = []
        for z, l in phi.expanded():
            labels.append(f"P{_tick(l)}({format_rat(z)})")
            body.append([Fraction(0) if p is None else poly_eval(p, z, l) for p in polys])
        for j, roots in enumerate(psi_star, start=1):
            for k, (w, l) in enumerate(roots.expanded()):
                labels.append(f"Q{j}{_tick(l)}({format_rat(w)})")
                row = []
                for col, qv in zip(columns, qvals):
                    if col.virtual:
                        row.append(_power_derivative(w, col.power, l) if col.component == j else Fraction(0))
                    else:
                        row.append(qv[j - 1][k])
                body.append(row)

        cof = _cofactors(body, len(columns))
        acc = Poly()
        for c, p in zip(cof, polys):
            if c and p is not None:
                acc = acc + p * c
        raw = poly_divide_exact(acc, phi.poly())
        return TransformResultII(n, TypeIIPoly(n, raw, False), cof[0], columns, body, labels)


def _tick(l: int) -> str:
    return "'" * l


def _make_seq(start, target, tie_break, kind) -> IndexSeq:
    if kind == "frame":
        return frame(start, target, tie_break)
    if kind == "path":
        from .indexseq import path

        return path(start, target)
    raise ValueError(f"unknown sequence kind {kind!r}")


_transform_cache: "weakref.WeakKeyDictionary[System, dict[TransformSpec, RationalTransform]]" = weakref.WeakKeyDictionary()


def transform_for(s: System, spec: TransformSpec) -> RationalTransform:
    """Shared :class:`RationalTransform` for ``(s, spec)``, so moment caches are reused."""
    per = _transform_cache.setdefault(s, {})
    t = per.get(spec)
    if t is None:
        t = per[spec] = RationalTransform(s, spec)
    return t


def geronimus_for(s: System, spec: TransformSpec, side: str, choice=None) -> list[MomentFunctional]:
    return transform_for(s, spec).geronimus(side, choice)


def type1_transform(s: System, spec: TransformSpec, n: Sequence[int], seq: IndexSeq | None = None, choice=None) -> TransformResultI:
    return transform_for(s, spec).type1(n, seq, choice)


def type2_transform(s: System, spec: TransformSpec, n: Sequence[int], seq: IndexSeq | None = None, choice=None, q_override: QOverride | None = None) -> TransformResultII:
    return transform_for(s, spec).type2(n, seq, choice, q_override)


# ---------------------------------------------------------------------------
# Uvarov: simplified second-kind values


def uvarov_weights(base: System, spec: TransformSpec) -> list[list[tuple[Fraction, Fraction]]]:
    """Recover the point masses ``(z_k, c_{j,k})`` of an Uvarov spec.

    Requires ``Φ_j = Ψ_j`` with simple roots for every component.
    """
    out = []
    for mu, c in zip(base, spec.components):
        if c.phi != c.psi or any(m != 1 for _, m in c.phi.items):
            raise ValueError("not an Uvarov component (need Φ_j = Ψ_j with simple roots)")
        zs = [z for z, _ in c.phi.items]
        vander = [[z**i for z in zs] for i in range(len(zs))]
        rhs = [c.free[i] - mu.moment(i) for i in range(len(zs))]
        weights = solve_rat(vander, rhs) if zs else []
        out.append(list(zip(zs, weights)))
    return out


def uvarov_simplified_q(mu: MomentFunctional, z: RatLike, weight: RatLike, p: Poly) -> Fraction:
    """``μ[(P(x) - P(z))/(x - z)] + c P'(z)``.

    Differs from the Cauchy-transform form ``∫P/(x-z) dμ + c P'(z)`` by
    ``P(z)·∫dμ/(x-z)``, a multiple of the ``P(z)`` row, so the determinant
    is unchanged.
    """
    z, weight = to_rat(z), to_rat(weight)
    quotient = poly_divide_exact(p - Poly.const(p(z)), Poly((-z, 1)))
    return mu.apply(quotient) + weight * poly_eval(p, z, 1)


def uvarov_q_override(t: RationalTransform) -> QOverride:
    """Q-row values built from the simplified Uvarov expression for ``t``."""
    masses = uvarov_weights(t.base, t.spec)
    psi_star = t.red2.psi_star
    lookup = []
    for j, roots in enumerate(psi_star):
        wmap = dict(masses[j])
        row = []
        for w, l in roots.expanded():
            if l:
                raise ValueError("simplified Uvarov values need simple roots")
            row.append((w, wmap.get(w, Fraction(0))))
        lookup.append(row)

    def override(j: int, k: int, idx: MultiIndex, p: Poly) -> Fraction:
        w, c = lookup[j - 1][k]
        return uvarov_simplified_q(t.base[j - 1], w, c, p)

    return override


# ---------------------------------------------------------------------------
# linear independence along sequences


def sequence_rank(s: System, seq: IndexSeq | Sequence[Sequence[int]], kind: str) -> tuple[int, int]:
    """Rank of the polynomials taken along ``seq`` and the number of them.

    ``kind`` is ``"I"`` (normalized type I vectors, flattened per component;
    the zero index is skipped) or ``"II"`` (monic type II polynomials).
    """
    pts = [as_index(p, s.r) for p in seq]
    rows: list[list[Fraction]] = []
    if kind == "II":
        polys = [s.type2_monic(p).poly for p in pts]
        width = max(sum(p) for p in pts) + 1
        rows = [list(q.coeffs) + [Fraction(0)] * (width - len(q.coeffs)) for q in polys]
    elif kind == "I":
        pts = [p for p in pts if any(p)]
        vecs = [s.type1_normalized(p).polys for p in pts]
        widths = [max(p[j] for p in pts) for j in range(s.r)]
        for v in vecs:
            row: list[Fraction] = []
            for a, w in zip(v, widths):
                row.extend(list(a.coeffs) + [Fraction(0)] * (w - len(a.coeffs)))
            rows.append(row)
    else:
        raise ValueError(f"unknown kind {kind!r}")
    return (rank_rat(rows) if rows else 0), len(rows)


# ---------------------------------------------------------------------------
# verification


@dataclass(frozen=True)
class Failure:
    check: str
    component: int | None = None
    power: int | None = None
    detail: str = ""

    def __str__(self) -> str:
        where = []
        if self.component is not None:
            where.append(f"component {self.component}")
        if self.power is not None:
            where.append(f"p = {self.power}")
        loc = f" [{', '.join(where)}]" if where else ""
        return f"{self.check}{loc}: {self.detail}" if self.detail else f"{self.check}{loc}"


@dataclass
class VerifyReport:
    index: MultiIndex
    kind: str
    dn: Fraction
    normal: bool
    failures: list[Failure] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.failures

    @property
    def first_failure(self) -> Failure | None:
        return self.failures[0] if self.failures else None


def verify_transform(s: System, spec: TransformSpec, n: Sequence[int], result: TransformResultI | TransformResultII) -> VerifyReport:
    """Check a determinantal result against the transformed system directly."""
    t = transform_for(s, spec)
    tilde = t.tilde
    n = as_index(n, s.r)
    normal = tilde.is_normal(n)
    if isinstance(result, TransformResultII):
        rep = VerifyReport(n, "II", result.dn, normal)
        p = result.raw.poly
        if p.degree > sum(n):
            rep.failures.append(Failure("degree", detail=f"deg {p.degree} > {sum(n)}"))
        for j, q, v in tilde.type2_violations(n, p):
            rep.failures.append(Failure("orthogonality", j, q, f"value {format_rat(v)}"))
        if p.coeff(sum(n)) != result.dn:
            rep.failures.append(Failure("leading coefficient", detail="degree-|n| coefficient differs from D_n"))
        if (result.dn != 0) != normal:
            rep.failures.append(Failure("D_n dichotomy", detail=f"D_n = {format_rat(result.dn)}, normal = {normal}"))
        if normal and result.dn != 0:
            got = result.normalized().poly
            want = tilde.type2_monic(n).poly
            if got != want:
                rep.failures.append(Failure("oracle", detail=f"{render_poly(got)} != {render_poly(want)}"))
        return rep

    rep = VerifyReport(n, "I", result.dn, normal)
    polys = result.raw.polys
    for j, (a, nj) in enumerate(zip(polys, n), start=1):
        if a.degree > nj - 1:
            rep.failures.append(Failure("degree", j, detail=f"deg {a.degree} > {nj - 1}"))
    for q, v in tilde.type1_violations(n, polys):
        rep.failures.append(Failure("orthogonality", None, q, f"value {format_rat(v)}"))
    top = tilde.type1_pairing(polys, sum(n) - 1)
    if top != result.dn:
        rep.failures.append(Failure("normalization", None, sum(n) - 1, f"pairing {format_rat(top)} != D_n {format_rat(result.dn)}"))
    if (result.dn != 0) != normal:
        rep.failures.append(Failure("D_n dichotomy", detail=f"D_n = {format_rat(result.dn)}, normal = {normal}"))
    if normal and result.dn != 0:
        got = result.normalized().polys
        want = tilde.type1_normalized(n).polys
        for j, (g, w) in enumerate(zip(got, want), start=1):
            if g != w:
                rep.failures.append(Failure("oracle", j, detail=f"{render_poly(g)} != {render_poly(w)}"))
    return rep


def render_determinant(result: TransformResultI | TransformResultII, drop_unit_virtual: bool = False) -> str:
    """Text layout of the numeric body with column and row labels.

    With ``drop_unit_virtual`` a virtual column whose only nonzero entry is a
    1 is removed together with that row (the equivalent reduced layout).
    """
    cols = list(range(len(result.columns)))
    rows = list(range(len(result.body)))
    if drop_unit_virtual:
        for ci, col in enumerate(result.columns):
            if not col.virtual:
                continue
            nz = [ri for ri in rows if result.body[ri][ci] != 0]
            if len(nz) == 1 and result.body[nz[0]][ci] == 1:
                cols.remove(ci)
                rows.remove(nz[0])
    header = ["", *(result.columns[c].label() for c in cols)]
    table = [header]
    first = "A(x)" if isinstance(result, TransformResultI) else "P(x)"
    table.append([first, *("0" if result.columns[c].virtual else "*" for c in cols)])
    for ri in rows:
        table.append([result.row_labels[ri], *(format_rat(result.body[ri][c]) for c in cols)])
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    return "\n".join("  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in table)
