"""Randomized cross-checks over the whole verdict stack.

These are consistency fuzzers, not example tests: random instances are fed
through independent code paths (exact Sturm membership, derivative
interlacing, line restrictions, SOS certification), and any certified answer
must agree with every other certified answer for the same question.
"""

import random
from fractions import Fraction

from hypersos.corpus import gen_elementary_symmetric, gen_lorentz, gen_product
from hypersos.hypercone import (
    HyperbolicityInstance,
    SampleConfig,
    cone_membership,
    int_cone_membership_by_derivative,
    interlaces,
    wronskian_delta,
)
from hypersos.polycore import Polynomial, restrict_to_line
from hypersos.realroots import is_real_rooted, roots_interlace, sturm_root_count
from hypersos.soscert import certify_sos

CFG = SampleConfig(trials=12, seed=77)


def test_fuzz_membership_three_ways():
    # exact Sturm membership vs derivative interlacing vs the SOS relaxation
    rng = random.Random(101)
    fams = [
        (gen_lorentz(3), [Fraction(1), Fraction(0), Fraction(0)]),
        (gen_product(3), [Fraction(1)] * 3),
        (gen_elementary_symmetric(4, 3), [Fraction(1)] * 4),
    ]
    agreements = 0
    for f, e in fams:
        inst = HyperbolicityInstance(f, e)
        n = f.nvars
        for _ in range(8):
            a = [Fraction(rng.randint(-3, 5)) for _ in range(n)]
            if not any(a):
                continue
            exact = cone_membership(inst, a, closure=True)
            via_der = int_cone_membership_by_derivative(inst, a, CFG, sos_budget=1)
            relaxed = certify_sos(wronskian_delta(f, e, a), 1)
            votes = [v for v in (exact, via_der) if not v.is_unknown]
            for v in votes:
                for w in votes:
                    assert v.is_yes == w.is_yes
            if relaxed.is_yes:
                assert exact.is_yes  # the relaxation is an inner approximation
            agreements += 1
    assert agreements >= 20


def test_fuzz_line_restrictions_of_certified_interlacers():
    # when the three-stage verdict certifies, every sampled line really does
    # interlace (checked with fresh lines the verdict never saw)
    from hypersos.polycore import directional_derivative

    rng = random.Random(103)
    f = gen_lorentz(4)
    e = [Fraction(1), Fraction(0), Fraction(0), Fraction(0)]
    inst = HyperbolicityInstance(f, e)
    for _ in range(6):
        a = [Fraction(rng.randint(-2, 3)) for _ in range(4)]
        if not any(a):
            continue
        cand = directional_derivative(f, a)
        if cand.is_zero() or cand.evaluate(e) <= 0:
            continue
        v = interlaces(inst, cand, CFG, sos_budget=1)
        if not v.is_yes:
            continue
        for _ in range(10):
            line_a = [Fraction(rng.randint(-6, 6)) for _ in range(4)]
            fline = restrict_to_line(f, e, line_a)
            gline = restrict_to_line(cand, e, line_a)
            assert roots_interlace(fline, gline).is_yes


def test_fuzz_real_rootedness_vs_counting():
    rng = random.Random(107)
    from hypersos.polycore import UniPoly

    for _ in range(60):
        k = rng.randint(1, 5)
        p = UniPoly([1])
        real_roots = 0
        for _ in range(k):
            if rng.random() < 0.6:
                r = Fraction(rng.randint(-5, 5))
                p = p * UniPoly([-r, 1])
                real_roots += 1
            else:
                # irreducible quadratic t^2 + bt + c with b^2 < 4c
                b = rng.randint(-3, 3)
                c = rng.randint(b * b // 4 + 1, b * b // 4 + 5)
                p = p * UniPoly([c, b, 1])
        assert is_real_rooted(p) == (real_roots == p.degree())
        assert sturm_root_count(p) <= real_roots  # distinct vs with multiplicity
