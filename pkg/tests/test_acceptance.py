"""Acceptance criteria, exact (tolerance 0).

Each test prints one ``PASS``/``FAIL`` line.  Run directly for the summary only:

    python3 tests/test_acceptance.py
"""

import itertools
import sys
import time
from fractions import Fraction as F

import pytest

from moprs.arith import Poly, RootList
from moprs.core import System, index_box
from moprs.functionals import IntervalLebesgue
from moprs.indexseq import INCREASING, explicit, frame, path
from moprs.transforms import (
    RationalTransform,
    TransformSpec,
    sequence_rank,
    uvarov_q_override,
    verify_transform,
)

X = Poly.x()
NONE = RootList()


def angelesco():
    return System([IntervalLebesgue(0, 1), IntervalLebesgue(2, 3)])


def four_specs(s):
    return {
        "a": TransformSpec.christoffel([RootList.of(-1), RootList.of(-1)]),
        "b": TransformSpec.christoffel([RootList.of(-1), NONE]),
        "c": TransformSpec.geronimus([RootList.of(5), RootList.of(5)]),
        "d": TransformSpec.uvarov(s, [[(5, 1)], [(5, 2)]]),
    }


def indices(max_size, min_size=0):
    return [n for n in index_box((max_size, max_size)) if min_size <= sum(n) <= max_size]


def emit(number, ok, seconds, limit, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {number}: {detail} ({seconds:.2f}s, limit {limit}s)"
    print(line, flush=True)
    return line


def run(number, limit, body):
    start = time.perf_counter()
    try:
        ok, detail = body()
    except Exception as exc:  # reported as a failing line, not a crash
        ok, detail = False, f"raised {type(exc).__name__}: {exc}"
    seconds = time.perf_counter() - start
    ok = ok and seconds < limit
    emit(number, ok, seconds, limit, detail)
    assert ok, detail


def criterion_1():
    s = System([IntervalLebesgue(0, 1)])
    spec = TransformSpec.christoffel([RootList.of(0)])
    t = RationalTransform(s, spec)
    p1, p2 = s.type2_monic((1,)).poly, s.type2_monic((2,)).poly
    res = t.type2((1,), explicit([(2,), (1,)]))
    hat = res.normalized().poly
    checks = [
        hat == X - F(2, 3),
        t.tilde.type2_monic((1,)).poly == X - F(2, 3),
        X * hat == p2 + p1 * F(1, 3),
        res.raw.poly * X == p2 * p1(0) - p1 * p2(0),
    ]
    return all(checks), f"x*(x - 2/3) = P_2 + P_1/3 by determinant and oracle, checks {checks}"


def criterion_2():
    s = System([IntervalLebesgue(0, 1)])
    spec = TransformSpec.build([{"phi": RootList.of(2), "psi": RootList.of(3), "free": [1]}])
    t = RationalTransform(s, spec)
    bad = []
    for choice in ([[0]], [[F(7, 3)]]):
        for n in range(1, 6):
            res = t.type2((n,), choice=choice)
            if res.dn == 0 or res.normalized().poly != t.tilde.type2_monic((n,)).poly:
                bad.append((choice[0][0], n))
    return not bad, f"n = 1..5 for choices [0], [7/3]; mismatches {bad}"


def criterion_3():
    s = angelesco()
    bad, checked, skipped = [], 0, 0
    for name, spec in four_specs(s).items():
        t = RationalTransform(s, spec)
        for n in indices(6):
            if not t.tilde.is_normal(n):
                skipped += 1
                continue
            want = t.tilde.type2_monic(n).poly
            seqs = {
                "frame": t.default_seq_II(n, "interleaved", "frame"),
                "frame-reversed": t.default_seq_II(n, "reversed", "frame"),
                "path": t.default_seq_II(n, "interleaved", "path"),
            }
            for label, seq in seqs.items():
                checked += 1
                if t.type2(n, seq).normalized().poly != want:
                    bad.append((name, n, label))
    return not bad, f"{checked} type II determinants over specs a-d, |n| <= 6 ({skipped} non-normal skipped); mismatches {bad}"


def criterion_4():
    s = angelesco()
    bad, checked, skipped = [], 0, 0
    for name, spec in four_specs(s).items():
        t = RationalTransform(s, spec)
        for n in indices(6, 1):
            if not t.tilde.is_normal(n):
                skipped += 1
                continue
            want = t.tilde.type1_normalized(n).polys
            for tie, kind in (("interleaved", "frame"), ("reversed", "frame"), ("interleaved", "path")):
                checked += 1
                if t.type1(n, t.default_seq_I(n, tie, kind)).normalized().polys != want:
                    bad.append((name, n, tie, kind))
    # |n| = 1 under spec (c) uses the virtual column; with zero free moments
    # these indices are not normal, so the formula must report D_n = 0 there.
    spec_c = four_specs(s)["c"]
    tc = RationalTransform(s, spec_c)
    virtual = []
    for n in ((1, 0), (0, 1)):
        res = tc.type1(n)
        rep = verify_transform(s, spec_c, n, res)
        virtual.append(res.columns[0].virtual and rep.ok and (res.dn == 0) == (not rep.normal))
    # The same virtual layout at normal indices (nonzero free moments).
    spec_cx = TransformSpec.geronimus([RootList.of(5), RootList.of(5)], [[1], [2]])
    tx = RationalTransform(s, spec_cx)
    for n in ((1, 0), (0, 1)):
        res = tx.type1(n)
        virtual.append(res.columns[0].virtual and res.dn != 0 and res.normalized().polys == tx.tilde.type1_normalized(n).polys)
    ok = not bad and all(virtual)
    return ok, (f"{checked} type I determinants over specs a-d, 1 <= |n| <= 6 ({skipped} non-normal skipped); "
                f"mismatches {bad}; virtual-column checks {virtual}")


def criterion_5():
    s = angelesco()
    spec = TransformSpec.christoffel([RootList.of(-1, -1), RootList.of(-1, -1)])
    t = RationalTransform(s, spec)
    bad, checked = [], 0
    for n in indices(4):
        # poly_divide_exact raises if (x+1)^2 does not divide the determinant.
        r2 = t.type2(n)
        checked += 1
        if r2.row_labels != ["P(-1)", "P'(-1)"] or r2.normalized().poly != t.tilde.type2_monic(n).poly:
            bad.append(("II", n))
        if any(n):
            r1 = t.type1(n)
            checked += 1
            if r1.normalized().polys != t.tilde.type1_normalized(n).polys:
                bad.append(("I", n))
    return not bad, f"{checked} determinants with derivative rows at the double root -1, |n| <= 4; mismatches {bad}"


def criterion_6():
    s = System([IntervalLebesgue(0, 1)])
    spec = TransformSpec.geronimus([RootList.of(3)], [[0]])
    t = RationalTransform(s, spec)
    d1_ii, d1_i = t.type2((1,)).dn, t.type1((1,)).dn
    m1 = t.tilde.det((1,))
    others = []
    for n in range(0, 6):
        normal = t.tilde.is_normal((n,))
        dns = [t.type2((n,)).dn] + ([t.type1((n,)).dn] if n else [])
        others.append(all((d != 0) == normal for d in dns))
    ok = d1_ii == 0 and d1_i == 0 and m1 == 0 and all(others)
    return ok, f"D_1 = {d1_ii} (type II), {d1_i} (type I), det M_1 = {m1}; D_n != 0 exactly at normal n <= 5: {all(others)}"


def criterion_7():
    s = angelesco()
    spec = four_specs(s)["a"]
    t = RationalTransform(s, spec)
    n = (2, 2)
    # Type I: three sequences (two starting points) x three Geronimus choices.
    seqs_i = [frame((2, 2), (3, 3)), path((2, 2), (3, 3), [1, 2]), frame((1, 3), (3, 3))]
    choices_i = [None, [[1], [-2]], [[F(7, 3)], [5]]]
    out_i = {t.type1(n, sq, ch).normalized().polys for sq in seqs_i for ch in choices_i}
    # Type II: a single numerator root gives exactly two admissible sequences.
    seqs_ii = [explicit([(3, 2), (2, 2)]), explicit([(2, 3), (2, 2)])]
    choices_ii = [None, [[1], [-2]], [[F(7, 3)], [5]]]
    out_ii = {t.type2(n, sq, ch).normalized().poly for sq in seqs_ii for ch in choices_ii}
    invariant = len(out_i) == 1 and len(out_ii) == 1
    match = out_i == {t.tilde.type1_normalized(n).polys} and out_ii == {t.tilde.type2_monic(n).poly}
    ranks, frames = True, 0
    for a, b in itertools.product(index_box((3, 3)), repeat=2):
        if a == b or not all(x <= y for x, y in zip(a, b)):
            continue
        for lo, hi in ((a, b), (b, a)):
            seq = frame(lo, hi)
            kind = "I" if seq.direction == INCREASING else "II"
            rank, count = sequence_rank(s, seq, kind)
            frames += 1
            ranks = ranks and rank == count
    ok = invariant and match and ranks
    return ok, (f"n = (2,2): {len(out_i)} distinct type I / {len(out_ii)} distinct type II outputs over 9 / 6 runs; "
                f"oracle match {match}; full rank along {frames} frames in the (3,3) box: {ranks}")


def criterion_8():
    s = angelesco()
    spec = four_specs(s)["d"]
    t = RationalTransform(s, spec)
    override = uvarov_q_override(t)
    bad, checked = [], 0
    for n in indices(4):
        a, b = t.type2(n), t.type2(n, q_override=override)
        checked += 1
        if a.dn == 0 or b.dn == 0 or a.normalized().poly != b.normalized().poly:
            bad.append(n)
    return not bad, f"{checked} type II outputs with simplified Uvarov Q rows, |n| <= 4; changed {bad}"


CRITERIA = [
    (1, 1, criterion_1),
    (2, 5, criterion_2),
    (3, 60, criterion_3),
    (4, 60, criterion_4),
    (5, 30, criterion_5),
    (6, 5, criterion_6),
    (7, 10, criterion_7),
    (8, 10, criterion_8),
]


@pytest.mark.parametrize("number, limit, body", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, limit, body, capsys):
    with capsys.disabled():
        run(number, limit, body)


if __name__ == "__main__":
    failed = 0
    for number, limit, body in CRITERIA:
        try:
            run(number, limit, body)
        except AssertionError:
            failed += 1
    sys.exit(1 if failed else 0)
