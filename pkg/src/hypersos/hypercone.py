"""Hyperbolicity tests, cone membership, mixed Wronskians, and interlacer verdicts.

Per-line and per-point computations here are exact; only the hyperbolicity
test itself is Monte Carlo (a failed line is a disproof, a clean run is
labelled `sampled` evidence).  Interlacing verdicts run three stages:
refute on sampled lines, refute on sampled points of the Wronskian, then
certify the Wronskian as a sum of squares.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from . import soscert
from .polycore import (
    Polynomial,
    directional_derivative,
    restrict_to_line,
    uni_gcd,
)
from .realroots import is_real_rooted, roots_interlace, sturm_root_count
from .verdicts import Verdict, certified_no, certified_yes, unknown


@dataclass
class SampleConfig:
    """Deterministic sampling plan: integer coordinates in [-bound, bound]."""

    trials: int = 64
    seed: int = 42
    coordinate_bound: int = 10

    def vectors(self, nvars: int, count: Optional[int] = None) -> list[list[Fraction]]:
        rng = random.Random(self.seed)
        out: list[list[Fraction]] = []
        want = self.trials if count is None else count
        while len(out) < want:
            v = [Fraction(rng.randint(-self.coordinate_bound, self.coordinate_bound)) for _ in range(nvars)]
            if any(v):
                out.append(v)
        return out


class HyperbolicityInstance:
    """A homogeneous polynomial with a distinguished direction, f(e) > 0.

    The sign of f is flipped on construction when f(e) < 0; f(e) = 0 or an
    inhomogeneous f is rejected.
    """

    def __init__(self, f: Polynomial, e: Sequence):
        evec = [Fraction(x) for x in e]
        if len(evec) != f.nvars:
            raise ValueError("direction length must equal nvars")
        if not f.is_homogeneous():
            raise ValueError("f must be homogeneous")
        if f.is_zero():
            raise ValueError("f must be nonzero")
        fe = f.evaluate(evec)
        if fe == 0:
            raise ValueError("f(e) must be nonzero")
        self.f = f if fe > 0 else -f
        self.e = evec
        self.degree = f.total_degree()

    def __repr__(self) -> str:
        return f"HyperbolicityInstance(degree={self.degree}, nvars={self.f.nvars})"


def check_hyperbolic(inst: HyperbolicityInstance, cfg: SampleConfig) -> Verdict:
    """Sampled hyperbolicity test: real-rootedness of f(te+a) on random lines.

    A single non-real-rooted restriction disproves hyperbolicity and is
    returned as a witness.  Passing every trial is Monte Carlo evidence only;
    the verdict is CERTIFIED_YES with `sampled=true` recorded in detail.
    """
    f, e = inst.f, inst.e
    for a in cfg.vectors(f.nvars):
        line = restrict_to_line(f, e, a)
        if not is_real_rooted(line):
            return certified_no(witness={"a": a}, detail="restriction to the witness line is not real-rooted")
    return certified_yes(detail=f"sampled=true trials={cfg.trials} seed={cfg.seed}")


def cone_membership(inst: HyperbolicityInstance, a: Sequence, closure: bool = False) -> Verdict:
    """Exact membership of a in the hyperbolicity cone of (f, e).

    Membership in the open cone means f(te-a) has no roots with t <= 0;
    for the closed cone only roots with t < 0 disqualify.  Root counting is
    by Sturm sequences, so the verdict on the given line is exact.
    """
    avec = [Fraction(x) for x in a]
    if len(avec) != inst.f.nvars:
        raise ValueError("point length must equal nvars")
    line = restrict_to_line(inst.f, inst.e, [-x for x in avec])
    if closure:
        bad = sturm_root_count(line, None, Fraction(0)) - (1 if line(Fraction(0)) == 0 else 0)
    else:
        bad = sturm_root_count(line, None, Fraction(0))
    if bad > 0:
        return certified_no(
            witness={"a": avec},
            detail=f"f(te-a) has {bad} root(s) in the forbidden region",
        )
    return certified_yes(detail="no roots of f(te-a) at t <= 0" if not closure else "no roots of f(te-a) at t < 0")


def wronskian_delta(f: Polynomial, e: Sequence, a: Sequence) -> Polynomial:
    """The mixed Wronskian D_e f * D_a f - f * D_e D_a f.

    Homogeneous of degree 2d-2, symmetric in e and a, and bilinear; its
    nonnegativity characterizes membership of a in the closed cone.
    """
    if not f.is_homogeneous() or f.total_degree() < 1:
        raise ValueError("f must be homogeneous of degree >= 1")
    de = directional_derivative(f, e)
    da = directional_derivative(f, a)
    deda = directional_derivative(de, a)
    return de * da - f * deda


def delta_ij(f: Polynomial, i: int, j: int) -> Polynomial:
    """Wronskian in two coordinate directions: f_i * f_j - f * f_ij."""
    n = f.nvars
    if not (0 <= i < n and 0 <= j < n):
        raise ValueError("variable index out of range")
    fi = f.partial(i)
    fj = f.partial(j)
    fij = fi.partial(j)
    return fi * fj - f * fij


class SquareFreeSampleError(ValueError):
    """Raised when every sampled line of f carries a repeated root.

    Restrictions of a polynomial with a repeated factor have repeated roots
    on every line through e (given f(e) != 0), so this is overwhelming
    evidence of a repeated factor.  Factor it out and retry: the interlacers
    of f1^2*f2 are exactly f1 times the interlacers of f1*f2.
    """


def assert_square_free_sampled(f: Polynomial, e: Sequence, cfg: SampleConfig) -> None:
    """Exact square-freeness proof from one generic line, or raise.

    If f had a repeated factor, gcd(f(te+a), d/dt f(te+a)) would be
    nonconstant for every a (the factor's restriction divides both).  So a
    single line with constant gcd proves f square-free; only when every
    sampled line fails is the instance rejected.
    """
    for a in cfg.vectors(f.nvars):
        line = restrict_to_line(f, e, a)
        if line.degree() < 1:
            continue
        g = uni_gcd(line, line.derivative())
        if g.degree() == 0:
            return
    raise SquareFreeSampleError(
        f"all {cfg.trials} sampled line restrictions of f have repeated roots; "
        "f very likely has a repeated factor"
    )


def interlaces(
    inst: HyperbolicityInstance,
    g: Polynomial,
    cfg: SampleConfig,
    sos_budget: int = 2,
    settings: Optional[soscert.SdpSettings] = None,
    strict: bool = False,
) -> Verdict:
    """Does g interlace f with respect to e (and satisfy g(e) > 0)?

    Stage 1 refutes on sampled lines te+a via exact root interlacing.
    Stage 2 refutes by exact evaluation of W = D_e f * g - f * D_e g at
    sampled points.  Stage 3 certifies by writing (sum x_i^2)^N * W as a sum
    of squares for some N <= sos_budget; nonnegativity of W on R^n is
    equivalent to interlacing for square-free f.  Strictness holds generically
    (on a dense open set of lines), so with strict=True the per-line strict
    checks are reported in the YES detail as sampled evidence only; a
    non-strict sampled line never refutes.
    """
    f, e, d = inst.f, inst.e, inst.degree
    if g.is_zero():
        return certified_no(witness={"g(e)": Fraction(0)}, detail="g = 0 cannot interlace")
    if not g.is_homogeneous() or g.total_degree() != d - 1:
        raise ValueError(f"g must be homogeneous of degree {d - 1}")
    assert_square_free_sampled(f, e, cfg)
    ge = g.evaluate(e)
    if ge <= 0:
        return certified_no(witness={"g(e)": ge}, detail="interlacers must be positive at e")

    strict_failures = 0
    for a in cfg.vectors(f.nvars):
        fline = restrict_to_line(f, e, a)
        gline = restrict_to_line(g, e, a)
        v = roots_interlace(fline, gline, strict=False)
        if v.is_no:
            return certified_no(
                witness={"a": a, "line_verdict": v.detail},
                detail="roots fail to interlace on the witness line",
            )
        if strict and not roots_interlace(fline, gline, strict=True).is_yes:
            strict_failures += 1

    wg = directional_derivative(f, e) * g - f * directional_derivative(g, e)
    for p in cfg.vectors(f.nvars):
        val = wg.evaluate(p)
        if val < 0:
            return certified_no(
                witness={"point": p, "value": val},
                detail="Wronskian of (f, g) in direction e is negative at the witness point",
            )

    settings = settings or soscert.SdpSettings()
    cert = soscert.certify_sos(wg, sos_budget, settings)
    if cert.is_yes:
        detail = "SOS certificate for the interlacing Wronskian"
        if strict:
            detail += (
                f"; strictness sampled only ({cfg.trials - strict_failures}/{cfg.trials} lines strict)"
            )
        return certified_yes(witness=cert.witness, detail=detail)
    return unknown(
        detail="sampling found no counterexample and no SOS certificate was found "
        f"within denominator budget {sos_budget}"
    )


def int_cone_membership_by_derivative(
    inst: HyperbolicityInstance,
    a: Sequence,
    cfg: SampleConfig,
    sos_budget: int = 2,
    settings: Optional[soscert.SdpSettings] = None,
) -> Verdict:
    """Closed-cone membership of a, decided through D_a f interlacing f."""
    avec = [Fraction(x) for x in a]
    da = directional_derivative(inst.f, avec)
    if da.is_zero():
        return certified_no(witness={"D_a f": "0"}, detail="D_a f vanishes identically")
    return interlaces(inst, da, cfg, sos_budget, settings)
