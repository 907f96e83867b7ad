"""Stability tests, the representation builder, and determinant identities."""

import random
from fractions import Fraction

import pytest

from hypersos.corpus import gen_elementary_symmetric, gen_product
from hypersos.detrep import (
    DeterminantalRep,
    NoRep,
    bordered_determinant_identity,
    build_detrep_multiaffine,
    check_multiaffine_stable,
    interlacer_from_detrep,
    verify_detrep,
)
from hypersos.hypercone import HyperbolicityInstance, SampleConfig, delta_ij, interlaces
from hypersos.polycore import (
    Polynomial,
    directional_derivative,
    parse_poly,
    perfect_square_root,
    poly_adjugate,
    poly_determinant,
)

CFG = SampleConfig(trials=16, seed=21)


def ones(n):
    return [Fraction(1)] * n


# -- stability -------------------------------------------------------------------


def test_stable_e2_three_vars():
    v = check_multiaffine_stable(gen_elementary_symmetric(3, 2), CFG, sos_budget=0)
    assert v.is_yes


def test_stable_rejects_non_multiaffine():
    with pytest.raises(ValueError):
        check_multiaffine_stable(parse_poly("x1^2", ["x1", "x2"]), CFG)


def test_stable_product_all_wronskians_vanish():
    assert check_multiaffine_stable(gen_product(4), CFG, sos_budget=0).is_yes


def test_unstable_multiaffine_refuted():
    f = parse_poly("x1*x2 - x3*x4", ["x1", "x2", "x3", "x4"])
    v = check_multiaffine_stable(f, CFG, sos_budget=0)
    assert v.is_no
    assert "pair" in v.witness


# -- the builder -----------------------------------------------------------------


def test_build_e2_three_vars():
    f = gen_elementary_symmetric(3, 2)
    rep = build_detrep_multiaffine(f, [0, 1], ones(3))
    assert isinstance(rep, DeterminantalRep)
    assert rep.gamma != 0
    assert verify_detrep(rep, f)


def test_build_e3_four_vars():
    f = gen_elementary_symmetric(4, 3)
    rep = build_detrep_multiaffine(f, [0, 1, 2], ones(4))
    assert isinstance(rep, DeterminantalRep)
    assert verify_detrep(rep, f)


def test_build_products():
    for d in (2, 3, 4):
        f = gen_product(d)
        rep = build_detrep_multiaffine(f, list(range(d)), ones(d))
        assert isinstance(rep, DeterminantalRep)
        assert rep.gamma == 1
        # the pencil is diagonal with entries x_i
        for i in range(d):
            for r in range(d):
                for c in range(d):
                    expected = Fraction(1) if r == c == i else Fraction(0)
                    assert rep.matrices[i][r][c] == expected
        assert verify_detrep(rep, f)


def test_build_e2_four_vars_returns_obstruction():
    f = gen_elementary_symmetric(4, 2)
    out = build_detrep_multiaffine(f, [0, 1], ones(4))
    assert isinstance(out, NoRep)
    assert out.pair == (0, 1)
    assert out.delta == delta_ij(f, 0, 1)
    assert perfect_square_root(out.delta) is None


def test_build_rejects_bad_inputs():
    f = gen_elementary_symmetric(3, 2)
    with pytest.raises(ValueError):
        build_detrep_multiaffine(f, [0, 1, 2], ones(3))  # wrong dvars count
    with pytest.raises(ValueError):
        build_detrep_multiaffine(parse_poly("x^2 + y^2", ["x", "y"]), [0, 1], ones(2))
    with pytest.raises(ValueError):
        build_detrep_multiaffine(f, [0, 2], ones(3) + [Fraction(1)])  # e length


def test_build_linear_polynomial():
    f = parse_poly("2*x + 3*y", ["x", "y"])
    rep = build_detrep_multiaffine(f, [0], ones(2))
    assert isinstance(rep, DeterminantalRep)
    assert verify_detrep(rep, f)


def test_builder_closure_under_derivative_and_restriction():
    # if f has a representation, so do df/dx_k and f restricted to x_k = 0
    f = gen_elementary_symmetric(4, 3)
    g = f.partial(3)  # e_2 in the first three variables, lifted
    rep_g = build_detrep_multiaffine(g, [0, 1], ones(4))
    assert isinstance(rep_g, DeterminantalRep) and verify_detrep(rep_g, g)
    h = f.substitute_zero(3)  # e_3 of the first three variables
    rep_h = build_detrep_multiaffine(h, [0, 1, 2], ones(4))
    assert isinstance(rep_h, DeterminantalRep) and verify_detrep(rep_h, h)


def test_verify_detrep_examples():
    n = 3
    f = gen_product(n)
    diag = DeterminantalRep(
        matrices=[
            [[Fraction(1 if r == c == i else 0) for c in range(n)] for r in range(n)]
            for i in range(n)
        ],
        e=ones(n),
        gamma=Fraction(1),
    )
    assert verify_detrep(diag, f)
    other = parse_poly("x1*x2 + x1*x3", ["x1", "x2", "x3"])
    res = verify_detrep(diag, other)
    assert not res
    assert "det" in res.reason


def test_detrep_json_round_trip():
    import json

    f = gen_elementary_symmetric(3, 2)
    rep = build_detrep_multiaffine(f, [0, 1], ones(3))
    again = DeterminantalRep.from_json(rep.to_json())
    assert again.matrices == rep.matrices
    assert again.gamma == rep.gamma
    assert verify_detrep(again, f)
    data = json.loads(rep.to_json())
    assert set(data) == {"d", "n", "e", "gamma", "matrices"}
    assert data["d"] == 2 and data["n"] == 3
    assert "/" in data["gamma"]


# -- interlacers from representations ----------------------------------------------


def test_interlacer_from_diag_rep():
    n = 3
    f = gen_product(n)
    diag = DeterminantalRep(
        matrices=[
            [[Fraction(1 if r == c == i else 0) for c in range(n)] for r in range(n)]
            for i in range(n)
        ],
        e=ones(n),
        gamma=Fraction(1),
    )
    E11 = [[1, 0, 0], [0, 0, 0], [0, 0, 0]]
    assert interlacer_from_detrep(diag, E11) == f.partial(0)
    I3 = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
    assert interlacer_from_detrep(diag, I3) == directional_derivative(f, ones(n))


def test_interlacer_from_e2_rep_interlaces():
    f = gen_elementary_symmetric(3, 2)
    rep = build_detrep_multiaffine(f, [0, 1], ones(3))
    I2 = [[1, 0], [0, 1]]
    g = interlacer_from_detrep(rep, I2)
    assert g.total_degree() == 1
    inst = HyperbolicityInstance(f, ones(3))
    v = interlaces(inst, g, CFG, sos_budget=1)
    assert not v.is_no


def test_interlacer_rejects_indefinite_weight():
    f = gen_elementary_symmetric(3, 2)
    rep = build_detrep_multiaffine(f, [0, 1], ones(3))
    with pytest.raises(ValueError):
        interlacer_from_detrep(rep, [[0, 1], [1, 0]])


# -- rank-one round trip ---------------------------------------------------------


def test_rank_one_pencil_wronskians_are_the_predicted_squares():
    # pencil with rank-one blocks on the affine variables: Delta_ij equals
    # (v_i^T adj(M) v_j)^2 exactly
    rng = random.Random(71)
    for _ in range(5):
        d = 3
        vs = [[Fraction(rng.randint(-2, 2)) for _ in range(d)] for _ in range(d)]
        rows = []
        for r in range(d):
            row = []
            for c in range(d):
                terms = {}
                for i in range(d):
                    coeff = vs[i][r] * vs[i][c]
                    if coeff:
                        mono = tuple(1 if k == i else 0 for k in range(d))
                        terms[mono] = terms.get(mono, Fraction(0)) + coeff
                row.append(Polynomial(d, terms))
            rows.append(row)
        f = poly_determinant(rows)
        if f.is_zero():
            continue
        adj = poly_adjugate(rows)
        for i in range(d):
            for j in range(i + 1, d):
                q = Polynomial.zero(d)
                for r in range(d):
                    for c in range(d):
                        cf = vs[i][r] * vs[j][c]
                        if cf:
                            q = q + adj[r][c] * cf
                assert delta_ij(f, i, j) == q * q


def test_square_factor_property():
    # for f = g*h affine in x1, x2: Delta_12 f is a square iff both factors'
    # Delta_12 are squares (one of which always vanishes)
    names = ["x1", "x2", "x3", "x4"]
    g_sq = parse_poly("x1*x2 + x1*x3 + x2*x3", ["x1", "x2", "x3", "x4"])
    h_free = parse_poly("x3 + 2*x4", names)
    f = g_sq * h_free
    d_f = delta_ij(f, 0, 1)
    d_g = delta_ij(g_sq, 0, 1)
    assert d_f == h_free * h_free * d_g
    assert perfect_square_root(d_g) is not None
    assert perfect_square_root(d_f) is not None

    g_nonsq = gen_elementary_symmetric(4, 2)
    f2 = g_nonsq * h_free
    d2 = delta_ij(f2, 0, 1)
    assert d2 == h_free * h_free * delta_ij(g_nonsq, 0, 1)
    assert perfect_square_root(delta_ij(g_nonsq, 0, 1)) is None
    assert perfect_square_root(d2) is None


# -- bordered determinant identities -------------------------------------------------


def test_bordered_identity_unit_vectors_size2():
    assert bordered_determinant_identity(2, [1, 0], [1, 0], [0, 1], [0, 1])


def test_bordered_identity_random_size3():
    rng = random.Random(73)
    for _ in range(5):
        vecs = [[Fraction(rng.randint(-3, 3)) for _ in range(3)] for _ in range(4)]
        assert bordered_determinant_identity(3, *vecs)


def test_bordered_identity_derivative_is_signed_minor():
    # the rank-one directional derivative of det X along e_j e_i^T equals the
    # signed complementary minor
    size = 3
    nv = size * size
    X = [[Polynomial.variable(nv, r * size + c) for c in range(size)] for r in range(size)]
    detX = poly_determinant(X)
    for i in range(size):
        for j in range(size):
            deriv = detX.partial(j * size + i)
            minor_rows = [
                [X[r][c] for c in range(size) if c != i] for r in range(size) if r != j
            ]
            minor = poly_determinant(minor_rows)
            expected = minor if (i + j) % 2 == 0 else -minor
            assert deriv == expected


def test_bordered_identity_size_guard():
    with pytest.raises(ValueError):
        bordered_determinant_identity(5, [0] * 5, [0] * 5, [0] * 5, [0] * 5)
