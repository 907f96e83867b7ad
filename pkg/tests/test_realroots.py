"""Sturm counting, isolation, and exact interlacing verdicts."""

import random
from fractions import Fraction

import pytest

from hypersos.polycore import UniPoly, squarefree_part
from hypersos.realroots import (
    IsolatingInterval,
    compare_roots,
    is_real_rooted,
    isolate_real_roots,
    roots_interlace,
    sign_at_root,
    sturm_root_count,
)


def from_roots(roots):
    p = UniPoly([1])
    for r in roots:
        p = p * UniPoly([-Fraction(r), 1])
    return p


def test_sturm_count_examples():
    assert sturm_root_count(UniPoly([-1, 0, 1])) == 2
    assert sturm_root_count(UniPoly([1, 0, 1])) == 0
    # (t-1)^2 (t+2): two distinct real roots
    assert sturm_root_count(from_roots([1, 1, -2])) == 2


def test_sturm_count_half_open_convention():
    p = from_roots([0, 1])
    assert sturm_root_count(p, Fraction(-1), Fraction(0)) == 1  # 0 included
    assert sturm_root_count(p, Fraction(0), Fraction(1)) == 1  # 0 excluded, 1 included
    assert sturm_root_count(p, Fraction(0), Fraction(1, 2)) == 0


def test_sturm_count_against_grid_scan():
    # distinct roots at quarter-integers; scanning at odd eighths never hits a
    # root and each grid gap holds at most one, so sign changes count exactly
    rng = random.Random(31)
    for _ in range(40):
        k = rng.randint(1, 6)
        pool = [Fraction(n, 4) for n in range(-40, 41)]
        roots = sorted(rng.sample(pool, k))
        p = from_roots(roots)
        grid = [Fraction(2 * j + 1, 8) for j in range(-44, 44)]
        changes = sum(1 for a, b in zip(grid, grid[1:]) if p(a) * p(b) < 0)
        assert changes == len(roots)
        assert sturm_root_count(p) == len(roots)


def test_sturm_zero_polynomial_rejected():
    with pytest.raises(ValueError):
        sturm_root_count(UniPoly([]))


def test_isolate_sqrt2():
    rl = isolate_real_roots(UniPoly([-2, 0, 1]), Fraction(1, 100))
    assert len(rl.intervals) == 2
    neg, pos = rl.intervals
    assert neg.hi - neg.lo <= Fraction(1, 100)
    assert pos.hi - pos.lo <= Fraction(1, 100)
    assert neg.hi < 0 < pos.lo
    assert pos.lo**2 < 2 <= pos.hi**2  # sqrt(2) in (lo, hi]
    assert neg.hi**2 < 2 <= neg.lo**2
    assert rl.total_multiplicity() == 2


def test_isolate_triple_root_at_zero():
    rl = isolate_real_roots(UniPoly([0, 0, 0, 1]))
    assert len(rl.intervals) == 1
    iv = rl.intervals[0]
    assert iv.lo == iv.hi == 0
    assert iv.multiplicity == 3


def test_isolate_rational_roots_exact():
    rl = isolate_real_roots(UniPoly([0, -1, 1]))  # t^2 - t
    assert [(iv.lo, iv.hi) for iv in rl.intervals] == [(0, 0), (1, 1)]


def test_isolation_sign_invariant():
    rng = random.Random(37)
    for _ in range(30):
        k = rng.randint(1, 5)
        roots = sorted(rng.sample(range(-8, 9), k))
        p = from_roots(roots)
        rl = isolate_real_roots(p, Fraction(1, 64))
        assert len(rl.intervals) == k
        sf = squarefree_part(p)
        for iv in rl.intervals:
            if iv.is_exact:
                assert p(iv.lo) == 0
            else:
                assert sf(iv.lo) * sf(iv.hi) < 0


def test_is_real_rooted_examples():
    assert is_real_rooted(UniPoly([-1, 0, 1]))
    assert not is_real_rooted(UniPoly([1, 0, 1]))
    # t^2 (t^2 + 1)
    assert not is_real_rooted(UniPoly([0, 0, 1, 0, 1]))


def test_roots_interlace_examples():
    assert roots_interlace(UniPoly([-1, 0, 1]), UniPoly([0, 1]), strict=True).is_yes
    f = from_roots([1, 2, 3])
    g = from_roots([5, 6])
    assert roots_interlace(f, g).is_no
    # derivative interlacing (Rolle)
    f2 = UniPoly([0, -1, 0, 1])  # t^3 - t
    assert roots_interlace(f2, f2.derivative()).is_yes


def test_roots_interlace_shared_roots_and_multiplicity():
    f = from_roots([1, 2])
    g = from_roots([1])
    assert roots_interlace(f, g).is_yes
    assert roots_interlace(f, g, strict=True).is_no
    f3 = from_roots([-1, 1, 1])
    assert roots_interlace(f3, from_roots([-1, 1])).is_yes
    assert roots_interlace(f3, from_roots([Fraction(1, 2), Fraction(3, 4)])).is_no


def test_roots_interlace_non_real_rooted_is_no():
    assert roots_interlace(UniPoly([1, 0, 1]), UniPoly([0, 1])).is_no  # f complex roots
    assert roots_interlace(UniPoly([0, -1, 0, 1]), UniPoly([1, 0, 1])).is_no  # g complex roots


def test_roots_interlace_degree_mismatch():
    with pytest.raises(ValueError):
        roots_interlace(UniPoly([-1, 0, 1]), UniPoly([-1, 0, 1]))


def test_rolle_property_randomized():
    rng = random.Random(41)
    for _ in range(40):
        k = rng.randint(2, 6)
        roots = [rng.randint(-6, 6) for _ in range(k)]
        p = from_roots(roots)
        square_free = len(set(roots)) == len(roots)
        v = roots_interlace(p, p.derivative(), strict=square_free)
        assert v.is_yes, (roots, v.detail)


def test_compare_roots_gcd_equality():
    p1 = UniPoly([-2, 0, 1])  # roots +-sqrt(2)
    p2 = UniPoly([2, -2, -1, 1])  # (t-1)(t^2-2)
    r1 = isolate_real_roots(p1).intervals
    r2 = isolate_real_roots(p2).intervals
    # positive sqrt(2) appears in both
    assert compare_roots(r1[1], r2[2]) == 0
    assert compare_roots(r1[0], r2[0]) == 0
    assert compare_roots(r1[0], r2[1]) == -1
    assert compare_roots(r2[1], r1[1]) == -1


def test_sign_at_root():
    p = UniPoly([-2, 0, 1])
    neg, pos = isolate_real_roots(p).intervals
    q = UniPoly([-1, 1])  # t - 1
    assert sign_at_root(q, pos) == 1
    assert sign_at_root(q, neg) == -1
    assert sign_at_root(p, pos) == 0
    three_halves = IsolatingInterval(Fraction(3, 2), Fraction(3, 2), 1, UniPoly([Fraction(-3, 2), 1]))
    assert sign_at_root(q, three_halves) == 1
