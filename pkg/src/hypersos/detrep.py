"""Definite determinantal representations of multiaffine stable polynomials.

The builder follows the square-root route: the diagonal of the candidate
rank-one-modulo-f matrix A holds the partial derivatives of f, the
off-diagonal entries are exact square roots of the coordinate Wronskians
(their existence is the obstruction and the failure witness), signs are
fixed by divisibility of 2x2 minors, and the representation itself is the
adjugate of A divided by f^(d-2).  Exact LDL^T decides definiteness at e.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from . import soscert
from .exactla import ldl_psd, mat_det
from .hypercone import SampleConfig, delta_ij
from .polycore import (
    Polynomial,
    exact_divide,
    perfect_square_root,
    poly_adjugate,
    poly_determinant,
)
from .verdicts import Verdict, certified_no, certified_yes, unknown


class DetRepError(ValueError):
    """Internal inconsistency while building a representation (bad input)."""


@dataclass
class NoRep:
    """Obstruction witness: the coordinate Wronskian of `pair` is not a square."""

    pair: tuple[int, int]
    delta: Polynomial

    def __repr__(self) -> str:
        return f"NoRep(pair={self.pair})"


@dataclass
class DeterminantalRep:
    """Symmetric pencil M(x) = sum x_i M_i with det M(x) = gamma * f, M(e) > 0."""

    matrices: list  # n matrices, each d x d of Fraction
    e: list  # Fraction vector
    gamma: Fraction

    @property
    def size(self) -> int:
        return len(self.matrices[0])

    @property
    def nvars(self) -> int:
        return len(self.matrices)

    def pencil(self) -> list:
        """The d x d matrix of linear forms sum_i x_i M_i."""
        n, d = self.nvars, self.size
        out = []
        for r in range(d):
            row = []
            for c in range(d):
                terms = {}
                for i in range(n):
                    v = self.matrices[i][r][c]
                    if v:
                        mono = [0] * n
                        mono[i] = 1
                        terms[tuple(mono)] = v
                row.append(Polynomial(n, terms))
            out.append(row)
        return out

    def matrix_at(self, point: Sequence) -> list:
        pt = [Fraction(x) for x in point]
        d = self.size
        out = [[Fraction(0)] * d for _ in range(d)]
        for i, Mi in enumerate(self.matrices):
            if pt[i]:
                for r in range(d):
                    for c in range(d):
                        out[r][c] += pt[i] * Mi[r][c]
        return out

    def to_jsonable(self) -> dict:
        def frac(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        return {
            "d": self.size,
            "n": self.nvars,
            "e": [frac(x) for x in self.e],
            "gamma": frac(self.gamma),
            "matrices": [[[frac(x) for x in row] for row in M] for M in self.matrices],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_jsonable(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "DeterminantalRep":
        data = json.loads(text)
        return cls(
            matrices=[[[Fraction(x) for x in row] for row in M] for M in data["matrices"]],
            e=[Fraction(x) for x in data["e"]],
            gamma=Fraction(data["gamma"]),
        )


@dataclass
class CheckResult:
    """Boolean with an explanation; truthy exactly when the check passed."""

    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


def check_multiaffine_stable(
    f: Polynomial,
    cfg: Optional[SampleConfig] = None,
    sos_budget: int = 1,
    settings: Optional[soscert.SdpSettings] = None,
) -> Verdict:
    """Stability test for homogeneous multiaffine f via coordinate Wronskians.

    f is stable iff every Delta_ij f is nonnegative on R^n.  Sampling a
    negative value refutes exactly; certifying every pair as a sum of squares
    (perfect squares short-circuit) proves stability; anything else is
    UNKNOWN, with the uncertified pairs recorded in the detail.
    """
    cfg = cfg or SampleConfig()
    if not f.is_multiaffine():
        raise ValueError("f must be multiaffine (degree at most 1 in each variable)")
    if not f.is_homogeneous():
        raise ValueError("f must be homogeneous")
    n = f.nvars
    points = cfg.vectors(n)
    uncertified: list[tuple[int, int]] = []
    for i in range(n):
        for j in range(i, n):
            d = delta_ij(f, i, j)
            if d.is_zero():
                continue
            for p in points:
                val = d.evaluate(p)
                if val < 0:
                    return certified_no(
                        witness={"pair": (i, j), "point": p, "value": val},
                        detail=f"Delta_{i}{j} f is negative at the witness point",
                    )
            if perfect_square_root(d) is not None:
                continue
            v = soscert.certify_sos(d, sos_budget, settings)
            if not v.is_yes:
                uncertified.append((i, j))
    if not uncertified:
        return certified_yes(detail="every coordinate Wronskian certified as a sum of squares")
    return unknown(
        witness={"uncertified_pairs": uncertified},
        detail=f"{len(uncertified)} coordinate Wronskian(s) not certified: {uncertified}",
    )


def _product_coefficient(f: Polynomial, dvars: Sequence[int]) -> Fraction:
    mono = [0] * f.nvars
    for i in dvars:
        mono[i] = 1
    return f.coefficient(mono)


@dataclass
class InterlacerMatrix:
    """Rank-one-modulo-f matrix of degree-(d-1) forms: the builder's core.

    The diagonal holds the partial derivatives of f along the affine
    variables, off-diagonal entries are exact square roots of the coordinate
    Wronskians with signs fixed so all 2x2 minors are divisible by f.
    """

    entries: list  # d x d symmetric, Polynomial
    f: Polynomial
    dvars: list


def interlacer_matrix_multiaffine(
    f: Polynomial, dvars: Sequence[int]
) -> Union[InterlacerMatrix, NoRep]:
    """Assemble and verify the rank-one-modulo-f matrix for the builder.

    Returns NoRep with the offending pair when some Delta_ij f is not a
    perfect square; raises DetRepError when a divisibility or rank check
    fails (reducible or non-stable input).
    """
    dvars = list(dvars)
    n = f.nvars
    if not f.is_homogeneous():
        raise ValueError("f must be homogeneous")
    d = f.total_degree()
    if len(dvars) != d or len(set(dvars)) != d:
        raise ValueError(f"dvars must list {d} distinct variable indices (degree of f)")
    for i in dvars:
        if f.degree_in(i) > 1:
            raise ValueError(f"f must be affine in variable {i}")
    coeff = _product_coefficient(f, dvars)
    if coeff == 0:
        raise ValueError("coefficient of the dvars product monomial must be nonzero")

    # diagonal: partial derivatives; off-diagonal: square roots of Wronskians
    A: list[list[Optional[Polynomial]]] = [[None] * d for _ in range(d)]
    for a, i in enumerate(dvars):
        A[a][a] = f.partial(i)
    for a in range(d):
        for b in range(a + 1, d):
            delta = delta_ij(f, dvars[a], dvars[b])
            root = perfect_square_root(delta)
            if root is None:
                return NoRep(pair=(dvars[a], dvars[b]), delta=delta)
            A[a][b] = root
            A[b][a] = root

    # fix the sign of a_ij (2 <= i < j) so a_11*a_ij - a_1i*a_1j is divisible by f
    for a in range(1, d):
        for b in range(a + 1, d):
            minor = A[0][0] * A[a][b] - A[0][a] * A[0][b]
            if exact_divide(minor, f) is None:
                flipped = -A[a][b]
                minor2 = A[0][0] * flipped - A[0][a] * A[0][b]
                if exact_divide(minor2, f) is None:
                    raise DetRepError(
                        f"no sign of the ({dvars[a]},{dvars[b]}) entry makes the leading "
                        "2x2 minor divisible by f; f is likely reducible - factor it and "
                        "build a representation per factor"
                    )
                A[a][b] = flipped
                A[b][a] = flipped

    # rank-one modulo f: every 2x2 minor must be divisible by f
    for r1 in range(d):
        for r2 in range(r1 + 1, d):
            for c1 in range(d):
                for c2 in range(c1 + 1, d):
                    minor = A[r1][c1] * A[r2][c2] - A[r1][c2] * A[r2][c1]
                    if not minor.is_zero() and exact_divide(minor, f) is None:
                        raise DetRepError(
                            f"2x2 minor (rows {r1},{r2}, cols {c1},{c2}) is not divisible "
                            "by f; f is likely reducible - factor it and build a "
                            "representation per factor"
                        )

    # full-rank spot checks: at p_k (all dvars except k set to 1) row k of A
    # vanishes except the diagonal, which equals the product coefficient
    for k in range(d):
        p = [Fraction(0)] * n
        for a, i in enumerate(dvars):
            if a != k:
                p[i] = Fraction(1)
        for b in range(d):
            val = A[k][b].evaluate(p)
            expected = coeff if b == k else Fraction(0)
            if val != expected:
                raise DetRepError(
                    f"triangular vanishing pattern fails at row {k}, column {b}"
                )
    spot = [Fraction(2 * i + 1, 2) for i in range(n)]
    detA_at = mat_det([[entry.evaluate(spot) for entry in row] for row in A])
    if detA_at == 0:
        raise DetRepError("det A vanishes at the rational spot-check point")
    return InterlacerMatrix(entries=A, f=f, dvars=dvars)


def build_detrep_multiaffine(
    f: Polynomial, dvars: Sequence[int], e: Sequence
) -> Union[DeterminantalRep, NoRep]:
    """Construct a definite determinantal representation of f, or the obstruction.

    Requires f homogeneous of degree d, affine in the d variables `dvars`,
    with a nonzero coefficient on their product and f(e) != 0.  Returns NoRep
    with the offending pair when some Delta_ij f is not a perfect square;
    raises DetRepError if an internal exactness check fails (which indicates
    a reducible or non-stable input).
    """
    dvars = list(dvars)
    evec = [Fraction(x) for x in e]
    n = f.nvars
    if len(evec) != n:
        raise ValueError("e length must equal nvars")
    if not f.is_homogeneous():
        raise ValueError("f must be homogeneous")
    d = f.total_degree()

    if d == 1:
        if len(dvars) != 1 or f.degree_in(dvars[0]) != 1:
            raise ValueError("dvars must list the one variable f depends on")
        M = [[[f.coefficient(tuple(1 if k == i else 0 for k in range(n)))]] for i in range(n)]
        rep = DeterminantalRep(matrices=M, e=evec, gamma=Fraction(1))
        val = rep.matrix_at(evec)[0][0]
        if val == 0:
            raise DetRepError("f(e) = 0: the 1x1 pencil is not definite at e")
        if val < 0:
            rep = _negate_rep(rep)
        return rep

    built = interlacer_matrix_multiaffine(f, dvars)
    if isinstance(built, NoRep):
        return built
    A = built.entries

    adj = poly_adjugate(A)
    power = Polynomial.const(n, 1)
    for _ in range(d - 2):
        power = power * f
    M_pencil: list[list[Polynomial]] = [[None] * d for _ in range(d)]
    for r in range(d):
        for c in range(d):
            q = exact_divide(adj[r][c], power) if d > 2 else adj[r][c]
            if q is None:
                raise DetRepError(
                    f"f^(d-2) does not divide adjugate entry ({r},{c}); "
                    "rank-one reduction failed"
                )
            if not q.is_zero() and (not q.is_homogeneous() or q.total_degree() != 1):
                raise DetRepError(f"pencil entry ({r},{c}) is not linear")
            M_pencil[r][c] = q

    detM = poly_determinant(M_pencil)
    gamma_poly = exact_divide(detM, f)
    if gamma_poly is None or gamma_poly.total_degree() > 0:
        raise DetRepError("det M is not a constant multiple of f")
    gamma = gamma_poly.coefficient((0,) * n) if not gamma_poly.is_zero() else Fraction(0)
    if gamma == 0:
        raise DetRepError("det M vanishes identically")

    matrices = []
    for i in range(n):
        unit = tuple(1 if k == i else 0 for k in range(n))
        matrices.append([[M_pencil[r][c].coefficient(unit) for c in range(d)] for r in range(d)])
    rep = DeterminantalRep(matrices=matrices, e=evec, gamma=gamma)

    Me = rep.matrix_at(evec)
    res = ldl_psd(Me)
    if res.is_pd:
        return rep
    neg = ldl_psd([[-x for x in row] for row in Me])
    if neg.is_pd:
        return _negate_rep(rep)
    raise DetRepError(f"M(e) is not definite: {res.reason or 'rank-deficient'}")


def _negate_rep(rep: DeterminantalRep) -> DeterminantalRep:
    d = rep.size
    matrices = [[[-x for x in row] for row in M] for M in rep.matrices]
    gamma = rep.gamma if d % 2 == 0 else -rep.gamma
    return DeterminantalRep(matrices=matrices, e=rep.e, gamma=gamma)


def verify_detrep(rep: DeterminantalRep, f: Polynomial) -> CheckResult:
    """Exact verification: det(pencil) = gamma * f, gamma != 0, M(e) > 0."""
    if rep.nvars != f.nvars:
        return CheckResult(False, "variable count mismatch")
    if rep.gamma == 0:
        return CheckResult(False, "gamma is zero")
    detM = poly_determinant(rep.pencil())
    if detM != f * rep.gamma:
        return CheckResult(False, "det of the pencil does not equal gamma * f")
    res = ldl_psd(rep.matrix_at(rep.e))
    if not res.is_pd:
        return CheckResult(False, f"M(e) is not positive definite: {res.reason or 'rank-deficient'}")
    return CheckResult(True, "det identity, gamma, and definiteness all verified")


def interlacer_from_detrep(rep: DeterminantalRep, E: Sequence[Sequence]) -> Polynomial:
    """trace(E * adj(M(x))) for PSD E: a degree d-1 interlacer of det M(x)."""
    d = rep.size
    Emat = [[Fraction(x) for x in row] for row in E]
    if len(Emat) != d or any(len(row) != d for row in Emat):
        raise ValueError(f"E must be {d}x{d}")
    res = ldl_psd(Emat)
    if not res.is_psd:
        raise ValueError(f"E must be positive semidefinite: {res.reason}")
    adj = poly_adjugate(rep.pencil())
    n = rep.nvars
    acc = Polynomial.zero(n)
    for r in range(d):
        for c in range(d):
            if Emat[r][c]:
                acc = acc + adj[c][r] * Emat[r][c]
    return acc


def bordered_determinant_identity(
    size: int,
    alpha: Sequence,
    beta: Sequence,
    gamma: Sequence,
    delta: Sequence,
) -> bool:
    """Check the Schur-complement determinant identities on a symbolic matrix.

    For the size x size matrix X of independent variables and column vectors
    a, b, c, d, verifies exactly that

      det[X b; a^T 0] * det[X d; c^T 0] - det[X d; a^T 0] * det[X b; c^T 0]
        = det(X) * det[X b d; a^T 0 0; c^T 0 0]

    together with the derivative identities
      D_{b a^T} det X = -det[X b; a^T 0]      (one border: one sign flip)
      D_{d c^T} D_{b a^T} det X = det[X b d; a^T 0 0; c^T 0 0]
    (a single zero-block border contributes a factor -1 via the Schur
    formula; two borders cancel).  Sizes above 4 are rejected (symbolic
    determinant growth).
    """
    if size > 4:
        raise ValueError("size > 4 rejected: symbolic determinants grow too fast")
    if size < 1:
        raise ValueError("size must be positive")
    a = [Fraction(x) for x in alpha]
    b = [Fraction(x) for x in beta]
    c = [Fraction(x) for x in gamma]
    dd = [Fraction(x) for x in delta]
    for v in (a, b, c, dd):
        if len(v) != size:
            raise ValueError("vectors must have length = size")

    nv = size * size
    X = [[Polynomial.variable(nv, r * size + col) for col in range(size)] for r in range(size)]

    def bordered1(col, rowv):
        rows = [X[r] + [Polynomial.const(nv, col[r])] for r in range(size)]
        rows.append([Polynomial.const(nv, rowv[cc]) for cc in range(size)] + [Polynomial.zero(nv)])
        return poly_determinant(rows)

    def bordered2():
        rows = [X[r] + [Polynomial.const(nv, b[r]), Polynomial.const(nv, dd[r])] for r in range(size)]
        rows.append([Polynomial.const(nv, a[cc]) for cc in range(size)] + [Polynomial.zero(nv)] * 2)
        rows.append([Polynomial.const(nv, c[cc]) for cc in range(size)] + [Polynomial.zero(nv)] * 2)
        return poly_determinant(rows)

    detX = poly_determinant(X)
    ba = bordered1(b, a)
    dc = bordered1(dd, c)
    da = bordered1(dd, a)
    bc = bordered1(b, c)
    big = bordered2()
    if ba * dc - da * bc != detX * big:
        return False

    # derivative identities: direction of the rank-one matrix u v^T on X_{ji}
    def rank_one_derivative(p: Polynomial, u: list, v: list) -> Polynomial:
        out = Polynomial.zero(nv)
        for jj in range(size):
            for ii in range(size):
                w = u[jj] * v[ii]
                if w:
                    out = out + p.partial(jj * size + ii) * w
        return out

    first = rank_one_derivative(detX, b, a)
    if first != -ba:
        return False
    if rank_one_derivative(first, dd, c) != big:
        return False
    return True
