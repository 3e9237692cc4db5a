"""Paths, frames and admissible sequences of multi-indices.

Component ids (step orders, witnesses) are 1-based, matching the usual
``e_1, ..., e_r`` labelling.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Sequence

from .core import MultiIndex, as_index
from .errors import BadStepMultiset, ConfigError

INCREASING = "increasing"
DECREASING = "decreasing"


@dataclass(frozen=True)
class IndexSeq:
    direction: str
    points: tuple[MultiIndex, ...]
    witnesses: tuple[int, ...] | None = None

    @property
    def start(self) -> MultiIndex:
        return self.points[0]

    @property
    def d(self) -> int:
        return len(self.points) - 1

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __getitem__(self, i):
        return self.points[i]

    def offsets(self) -> list[MultiIndex]:
        sign = 1 if self.direction == INCREASING else -1
        s0 = self.start
        return [tuple(sign * (a - b) for a, b in zip(p, s0)) for p in self.points]

    def to_json(self) -> dict:
        out = {"kind": "explicit", "direction": self.direction, "points": [list(p) for p in self.points]}
        if self.witnesses is not None:
            out["order"] = list(self.witnesses)
        return out


def _direction(n: MultiIndex, m: MultiIndex) -> str:
    if all(a <= b for a, b in zip(n, m)):
        return INCREASING
    if all(a >= b for a, b in zip(n, m)):
        return DECREASING
    raise BadStepMultiset(f"{n} and {m} are not comparable componentwise")


def step_line_order(n: Sequence[int], m: Sequence[int]) -> list[int]:
    """Round-robin step order from ``n`` to ``m`` (the step-line when ``n = 0``)."""
    n, m = as_index(n), as_index(m, len(n))
    left = [abs(b - a) for a, b in zip(n, m)]
    order = []
    while any(left):
        for k, cnt in enumerate(left):
            if cnt:
                order.append(k + 1)
                left[k] -= 1
    return order


def path(n: Sequence[int], m: Sequence[int], step_order: Sequence[int] | None = None) -> IndexSeq:
    """Path from ``n`` to ``m`` taking unit steps in the given components."""
    n = as_index(n)
    m = as_index(m, len(n))
    direction = _direction(n, m)
    if step_order is None:
        step_order = step_line_order(n, m)
    step_order = [int(k) for k in step_order]
    r = len(n)
    if any(not 1 <= k <= r for k in step_order):
        raise BadStepMultiset(f"step order {step_order} has components outside 1..{r}")
    need = Counter({k + 1: abs(m[k] - n[k]) for k in range(r) if m[k] != n[k]})
    if Counter(step_order) != need:
        raise BadStepMultiset(f"step order {step_order} does not lead from {n} to {m}")
    sign = 1 if direction == INCREASING else -1
    cur = list(n)
    pts = [n]
    for k in step_order:
        cur[k - 1] += sign
        pts.append(tuple(cur))
    return IndexSeq(direction, tuple(pts), tuple(step_order))


def frame(n: Sequence[int], m: Sequence[int], tie_break: str = "interleaved") -> IndexSeq:
    """Frame from ``n`` towards ``m``: ``n ± j e_k`` ordered by ``j``.

    Elements with the same ``j`` belong to different components, so the tie
    break only fixes the component order within a level: ``"interleaved"``
    walks components ``1..r``, ``"reversed"`` walks ``r..1``.
    """
    n = as_index(n)
    m = as_index(m, len(n))
    direction = _direction(n, m)
    if tie_break == "interleaved":
        comps = range(len(n))
    elif tie_break == "reversed":
        comps = range(len(n) - 1, -1, -1)
    else:
        raise ValueError(f"unknown tie_break {tie_break!r}")
    comps = list(comps)
    sign = 1 if direction == INCREASING else -1
    span = [abs(b - a) for a, b in zip(n, m)]
    pts = [n]
    wit = []
    for j in range(1, max(span, default=0) + 1):
        for k in comps:
            if j <= span[k]:
                p = list(n)
                p[k] += sign * j
                pts.append(tuple(p))
                wit.append(k + 1)
    return IndexSeq(direction, tuple(pts), tuple(wit))


def find_witnesses(seq: IndexSeq | Sequence[Sequence[int]], n: Sequence[int], m: Sequence[int], direction: str | None = None) -> list[int] | None:
    """Witnesses ``k_1..k_d`` making ``seq`` admissible from ``n`` towards ``m``, or ``None``.

    The growth condition for step ``j`` involves only ``k_j``, so each witness
    is searched independently over all components; the smallest valid one is
    reported.
    """
    if isinstance(seq, IndexSeq):
        direction = direction or seq.direction
        pts = list(seq.points)
    else:
        pts = [as_index(p) for p in seq]
    n = as_index(n)
    m = as_index(m, len(n))
    if direction is None:
        direction = _direction(n, m)
    if not pts or pts[0] != n:
        return None
    r = len(n)
    if direction == INCREASING:
        lo, hi = n, m
        offs = [tuple(a - b for a, b in zip(p, n)) for p in pts]
    else:
        lo, hi = m, n
        offs = [tuple(b - a for a, b in zip(p, n)) for p in pts]
    for p in pts:
        if len(p) != r or any(not (a <= v <= b) for a, v, b in zip(lo, p, hi)):
            return None
    witnesses = []
    best = list(offs[0])
    for s in offs[1:]:
        k = next((k for k in range(r) if s[k] > best[k]), None)
        if k is None:
            return None
        witnesses.append(k + 1)
        best = [max(a, b) for a, b in zip(best, s)]
    return witnesses


def is_admissible(seq: IndexSeq | Sequence[Sequence[int]], n: Sequence[int], m: Sequence[int], direction: str | None = None) -> bool:
    return find_witnesses(seq, n, m, direction) is not None


def explicit(points: Sequence[Sequence[int]], direction: str | None = None) -> IndexSeq:
    pts = tuple(as_index(p) for p in points)
    if not pts:
        raise ValueError("an index sequence needs at least one point")
    if direction is None:
        direction = INCREASING
        for p in pts[1:]:
            if sum(p) < sum(pts[0]):
                direction = DECREASING
                break
    return IndexSeq(direction, pts)


def seq_from_json(data: dict) -> IndexSeq:
    """``{"kind": "path"|"frame"|"explicit", "from": [...], "to": [...], "order": [...]}``."""
    if not isinstance(data, dict):
        raise ConfigError(f"sequence description must be an object: {data!r}")
    allowed = {"kind", "from", "to", "order", "points", "direction", "tie_break"}
    extra = set(data) - allowed
    if extra:
        raise ConfigError(f"unknown sequence fields {sorted(extra)}")
    kind = data.get("kind")
    try:
        if kind == "path":
            return path(data["from"], data["to"], data.get("order"))
        if kind == "frame":
            return frame(data["from"], data["to"], data.get("tie_break", "interleaved"))
        if kind == "explicit":
            return explicit(data["points"], data.get("direction"))
    except KeyError as exc:
        raise ConfigError(f"sequence is missing field {exc}") from None
    except ValueError as exc:
        raise ConfigError(str(exc)) from None
    raise ConfigError(f"unknown sequence kind {kind!r}")
