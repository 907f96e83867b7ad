"""Sums-of-squares certification with exact rational Gram certificates.

The pipeline for a target form F of even degree:

  1. assemble the affine family of Gram matrices {G : v^T G v = F} exactly
     (particular solution + nullspace basis over Q);
  2. find a numerically PSD member by alternating projections between the
     PSD cone and the affine family (the only floating-point step);
  3. round entrywise to bounded-denominator rationals, project exactly back
     onto the family, and decide PSD by exact pivoted LDL^T.

A successful step 3 is a self-contained exact certificate.  Exact real zeros
of the target (scanned on a small integer grid) drive a face reduction
before step 1: every candidate square must vanish at each zero, and along
flat Hessian directions it must vanish to half the order of the target's
line restriction.  This frequently collapses boundary instances to a unique
Gram point decided outright.  CERTIFIED_NO is issued only from an exact
decision: a negative value or a local obstruction at a zero, a single
non-PSD Gram point, or no Gram matrix at all over a complete basis.
Denominator powers upgrade the relaxation: (sum x_i^2)^N * F is tried for
N = 0..budget.  A modulo-f variant searches for a polynomial multiplier p
with F - p*f a sum of squares, carrying p's coefficients as extra exact
unknowns of the same affine family.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .exactla import LdlResult, ldl_psd, solve_affine_family, solve_linear
from .polycore import (
    Mono,
    Polynomial,
    default_names,
    format_poly,
    grlex_key,
    parse_poly,
)
from .verdicts import Verdict, certified_no, certified_yes, unknown


@dataclass
class SdpSettings:
    max_iterations: int = 3000
    feasibility_tolerance: float = 1e-9
    rounding_denominator_bound: int = 100
    random_seed: int = 0


class GramInfeasibleError(ValueError):
    """No Gram matrix exists for the target over the given basis."""


def monomials_of_degree(nvars: int, degree: int) -> list[Mono]:
    """All exponent tuples of the given total degree, graded-lex descending."""
    out: list[Mono] = []

    def rec(prefix: list[int], remaining: int, pos: int):
        if pos == nvars - 1:
            out.append(tuple(prefix + [remaining]))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + [e], remaining - e, pos + 1)

    if nvars == 0:
        return [()] if degree == 0 else []
    rec([], degree, 0)
    out.sort(key=grlex_key, reverse=True)
    return out


def box_reduced_support(F: Polynomial) -> list[Mono]:
    """Candidate Gram-basis monomials from per-coordinate support bounds.

    Any sum-of-squares decomposition of F only uses monomials m with 2m in
    the Newton polytope of F's support; the per-coordinate bounding box of
    the support contains that polytope, so filtering on the box keeps a
    superset of the admissible monomials (the filter is sound).
    """
    k, rem = divmod(F.total_degree(), 2)
    if rem:
        raise ValueError("odd degree")
    monos = monomials_of_degree(F.nvars, k)
    support = list(F.terms.keys())
    lo = [min(m[i] for m in support) for i in range(F.nvars)]
    hi = [max(m[i] for m in support) for i in range(F.nvars)]
    return [m for m in monos if all(lo[i] <= 2 * m[i] <= hi[i] for i in range(F.nvars))]


class GramSystem:
    """Affine family of Gram matrices for a target form over a fixed basis.

    Unknowns are the upper-triangle entries of the symmetric matrix, plus
    (for the modulo-f variant) the multiplier coefficients.  For a basis of
    distinct monomials each coefficient-matching equation touches a disjoint
    set of unknowns, so the family has a cheap structural form; general
    polynomial bases go through exact Gaussian elimination.
    """

    def __init__(
        self,
        target: Polynomial,
        basis: list[Polynomial],
        modulus: Optional[Polynomial] = None,
        mult_monos: Optional[list[Mono]] = None,
    ):
        self.target = target
        self.basis = basis
        self.modulus = modulus
        self.mult_monos = mult_monos or []
        n = len(basis)
        self.size = n
        self.pairs: list[tuple[int, int]] = [(i, j) for i in range(n) for j in range(i, n)]
        self.pair_index = {p: k for k, p in enumerate(self.pairs)}
        self.weights: list[int] = [1 if i == j else 2 for i, j in self.pairs]
        self.extra = len(self.mult_monos)
        self.nunknowns = len(self.pairs) + self.extra

        monomial_basis = modulus is None and all(
            p.num_terms() == 1 and next(iter(p.terms.values())) == 1 for p in basis
        )
        self._eqs: Optional[list[tuple[list[int], list[Fraction], Fraction]]] = None
        self._null: Optional[list[list[Fraction]]] = None
        self._normal_cache: Optional[list[list[Fraction]]] = None
        if monomial_basis:
            self._assemble_structural()
        else:
            self._assemble_general()

    # -- assembly ------------------------------------------------------------

    def _assemble_structural(self):
        basis_monos = [next(iter(p.terms.keys())) for p in self.basis]
        eq_of_mono: dict[Mono, list[int]] = {}
        for k, (i, j) in enumerate(self.pairs):
            m = tuple(a + b for a, b in zip(basis_monos[i], basis_monos[j]))
            eq_of_mono.setdefault(m, []).append(k)
        for m in self.target.terms:
            if m not in eq_of_mono:
                raise GramInfeasibleError(
                    "target monomial admits no product split over the basis"
                )
        eqs = []
        for m, pair_idxs in sorted(eq_of_mono.items(), key=lambda kv: grlex_key(kv[0]), reverse=True):
            coeffs = [Fraction(self.weights[k]) for k in pair_idxs]
            rhs = self.target.terms.get(m, Fraction(0))
            eqs.append((pair_idxs, coeffs, rhs))
        self._eqs = eqs
        vec = [Fraction(0)] * self.nunknowns
        for pair_idxs, coeffs, rhs in eqs:
            vec[pair_idxs[0]] = rhs / coeffs[0]
        self._particular = vec

    def _assemble_general(self):
        nvars = self.target.nvars
        products: dict[int, Polynomial] = {}
        for k, (i, j) in enumerate(self.pairs):
            p = self.basis[i] * self.basis[j]
            products[k] = p * self.weights[k]
        mult_polys: list[Polynomial] = []
        if self.modulus is not None:
            for m in self.mult_monos:
                mult_polys.append(Polynomial.monomial(nvars, m) * self.modulus)
        all_monos: set[Mono] = set(self.target.terms)
        for p in products.values():
            all_monos.update(p.terms)
        for p in mult_polys:
            all_monos.update(p.terms)
        mono_list = sorted(all_monos, key=grlex_key, reverse=True)
        rows: list[list[Fraction]] = []
        rhs: list[Fraction] = []
        for m in mono_list:
            row = [Fraction(0)] * self.nunknowns
            for k in range(len(self.pairs)):
                c = products[k].terms.get(m)
                if c:
                    row[k] = c
            for t, p in enumerate(mult_polys):
                c = p.terms.get(m)
                if c:
                    row[len(self.pairs) + t] = c
            rows.append(row)
            rhs.append(self.target.terms.get(m, Fraction(0)))
        sol = solve_affine_family(rows, rhs, self.nunknowns)
        if sol is None:
            raise GramInfeasibleError("coefficient-matching equations are inconsistent")
        self._particular, self._null = sol

    # -- views ----------------------------------------------------------------

    @property
    def nullspace_dim(self) -> int:
        if self._eqs is not None:
            return sum(len(p) - 1 for p, _, _ in self._eqs)
        return len(self._null)

    def particular_vector(self) -> list[Fraction]:
        return list(self._particular)

    def matrix_from_vector(self, vec: Sequence[Fraction]) -> list[list[Fraction]]:
        n = self.size
        G = [[Fraction(0)] * n for _ in range(n)]
        for k, (i, j) in enumerate(self.pairs):
            G[i][j] = Fraction(vec[k])
            G[j][i] = Fraction(vec[k])
        return G

    def vector_from_matrix(self, G: Sequence[Sequence], extra: Sequence = ()) -> list[Fraction]:
        vec = [Fraction(G[i][j]) for (i, j) in self.pairs]
        vec.extend(Fraction(x) for x in extra)
        return vec

    def particular_matrix(self) -> list[list[Fraction]]:
        return self.matrix_from_vector(self._particular)

    def nullspace_matrices(self) -> list[list[list[Fraction]]]:
        """Materialize the nullspace basis as symmetric matrices (Gram part)."""
        out = []
        for v in self.nullspace_vectors():
            out.append(self.matrix_from_vector(v))
        return out

    def nullspace_vectors(self) -> list[list[Fraction]]:
        if self._null is not None:
            return [list(v) for v in self._null]
        out = []
        for pair_idxs, coeffs, _ in self._eqs:
            lead = pair_idxs[0]
            for k, c in zip(pair_idxs[1:], coeffs[1:]):
                v = [Fraction(0)] * self.nunknowns
                v[k] = Fraction(1)
                v[lead] = -c / coeffs[0]
                out.append(v)
        return out

    def contains(self, G: Sequence[Sequence], extra: Sequence = ()) -> bool:
        """Exact membership of a symmetric matrix (+multiplier) in the family."""
        vec = self.vector_from_matrix(G, extra)
        return self.project_exact(vec) == vec

    # -- exact projection ------------------------------------------------------

    def project_exact(self, vec: Sequence[Fraction]) -> list[Fraction]:
        """Weighted-Frobenius least-squares projection onto the affine family."""
        y = [Fraction(v) for v in vec]
        if self._eqs is not None:
            out = list(y)
            for pair_idxs, coeffs, rhs in self._eqs:
                num = rhs - sum(c * y[k] for k, c in zip(pair_idxs, coeffs))
                den = sum(c * c / self.weights[k] for k, c in zip(pair_idxs, coeffs))
                if den == 0:
                    continue
                nu = num / den
                for k, c in zip(pair_idxs, coeffs):
                    out[k] = y[k] + nu * c / self.weights[k]
            return out
        null = self._null
        if not null:
            return list(self._particular)
        w = [Fraction(wt) for wt in self.weights] + [Fraction(1)] * self.extra
        m = len(null)
        if self._normal_cache is None:
            A = [[Fraction(0)] * m for _ in range(m)]
            for r in range(m):
                vr = null[r]
                support_r = [i for i in range(self.nunknowns) if vr[i]]
                for c in range(r, m):
                    vc = null[c]
                    s = sum(w[i] * vr[i] * vc[i] for i in support_r if vc[i])
                    A[r][c] = s
                    A[c][r] = s
            self._normal_cache = A
        A = self._normal_cache
        b = [Fraction(0)] * m
        diff = [y[i] - self._particular[i] for i in range(self.nunknowns)]
        for r in range(m):
            vr = null[r]
            b[r] = sum(w[i] * vr[i] * diff[i] for i in range(self.nunknowns) if vr[i])
        lam = solve_linear(A, b)
        out = list(self._particular)
        for r, lr in enumerate(lam):
            if lr:
                vr = null[r]
                for i in range(self.nunknowns):
                    if vr[i]:
                        out[i] += lr * vr[i]
        return out

    def residual(self, vec: Sequence[Fraction]) -> Polynomial:
        """v^T G v + p*modulus - target, exactly (zero iff vec is in the family)."""
        G = self.matrix_from_vector(vec)
        acc = Polynomial.zero(self.target.nvars)
        for k, (i, j) in enumerate(self.pairs):
            if G[i][j]:
                acc = acc + self.basis[i] * self.basis[j] * (G[i][j] * self.weights[k])
        if self.modulus is not None:
            for t, m in enumerate(self.mult_monos):
                c = vec[len(self.pairs) + t]
                if c:
                    acc = acc + Polynomial.monomial(self.target.nvars, m, c) * self.modulus
        return acc - self.target


def assemble_gram_system(F: Polynomial, basis: Optional[list[Polynomial]] = None) -> GramSystem:
    """Exact particular solution + nullspace basis of the Gram equations for F.

    With the default full monomial basis the system is always consistent.
    """
    if F.is_zero():
        raise ValueError("zero polynomial has no Gram system")
    if not F.is_homogeneous():
        raise ValueError("target must be homogeneous")
    k, rem = divmod(F.total_degree(), 2)
    if rem:
        raise ValueError("target must have even degree")
    if basis is None:
        basis = [Polynomial.monomial(F.nvars, m) for m in monomials_of_degree(F.nvars, k)]
    return GramSystem(F, list(basis))


def _auto_basis(F: Polynomial) -> list[Polynomial]:
    """Full monomial basis, box-reduced when that kills at least a quarter."""
    k = F.total_degree() // 2
    full = monomials_of_degree(F.nvars, k)
    reduced = box_reduced_support(F)
    chosen = reduced if len(reduced) <= 0.75 * len(full) else full
    return [Polynomial.monomial(F.nvars, m) for m in chosen]


def scan_small_points(F: Polynomial, coord: int = 1):
    """Exact zeros and a negativity witness of F on the grid {-coord..coord}^n.

    Only coordinates that occur in F are varied (the rest stay zero), and
    points are deduplicated projectively (first varying coordinate positive);
    F is homogeneous of even degree so this loses nothing.  Returns
    (zeros, negative_witness_or_None).  Skipped beyond 8 occurring variables.
    """
    import itertools

    occurring = [i for i in range(F.nvars) if F.degree_in(i) > 0]
    if len(occurring) > 8:
        return [], None
    zeros = []
    rng = range(-coord, coord + 1)
    for tup in itertools.product(rng, repeat=len(occurring)):
        first = next((x for x in tup if x), None)
        if first is None or first < 0:
            continue
        point = [Fraction(0)] * F.nvars
        for i, x in zip(occurring, tup):
            point[i] = Fraction(x)
        val = F.evaluate(point)
        if val == 0:
            zeros.append(point)
        elif val < 0:
            return [], point
    return zeros, None


def _hessian_at(F: Polynomial, p) -> list[list[Fraction]]:
    n = F.nvars
    H = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        fi = F.partial(i)
        for j in range(i, n):
            v = fi.partial(j).evaluate(p)
            H[i][j] = v
            H[j][i] = v
    return H


def _kernel_directions(F: Polynomial, p) -> list[list[Fraction]]:
    """Exact kernel basis of the Hessian of F at p (the flat directions)."""
    H = _hessian_at(F, p)
    sol = solve_affine_family(H, [Fraction(0)] * F.nvars, F.nvars)
    assert sol is not None
    return sol[1]


def second_order_obstruction(F: Polynomial, zeros):
    """Exact non-SOS witness from the local structure at a zero, or None.

    If F is a sum of squares then at every real zero p the gradient vanishes,
    the Hessian is 2 * sum grad(h) grad(h)^T (hence PSD by exact LDL^T), and
    along every flat direction u the restriction F(p + t u) has even vanishing
    order with a positive leading coefficient.  Each failure is an exact
    refutation, and it survives multiplication by powers of the square sum.
    """
    from .polycore import restrict_to_line

    n = F.nvars
    for p in zeros:
        grad = [F.partial(i).evaluate(p) for i in range(n)]
        if any(grad):
            return {"point": p, "gradient": grad, "kind": "nonzero gradient at a zero"}
        H = _hessian_at(F, p)
        res = ldl_psd(H)
        if not res.is_psd:
            return {"point": p, "hessian": H, "kind": f"Hessian not PSD at a zero ({res.reason})"}
        for u in _kernel_directions(F, p):
            line = restrict_to_line(F, u, p)
            if line.is_zero():
                continue
            order = next(i for i, c in enumerate(line.coeffs) if c)
            lead = line.coeffs[order]
            if order % 2 == 1 or lead < 0:
                # F takes negative values arbitrarily close to p on this line
                return {
                    "point": p,
                    "direction": u,
                    "kind": f"odd or negative leading order {order} along a flat line",
                }
    return None


def constrain_basis_to_zeros(
    basis: list[Polynomial], zeros, F: Optional[Polynomial] = None
) -> list[Polynomial]:
    """Restrict a square basis to the subspace forced by the target's zeros.

    Sound for SOS search: if F = sum h_m^2 and F(p) = 0, every h_m vanishes
    at p.  When F is supplied, stronger line conditions are added: along any
    direction u where the Hessian of F at p is flat, F(p + t u) vanishes to
    order 2s, and sum h_m(p + t u)^2 = F(p + t u) forces each h_m to vanish
    to order s on that line (identically, when F does).  All of these are
    linear rows in the h coefficients, computed exactly from F once; they
    apply unchanged to F times any power of the square sum (a positive
    factor at p).  Returns the original basis when nothing binds.
    """
    from .polycore import restrict_to_line

    if not zeros:
        return basis
    # constrained bases leave the cheap structural assembly for exact
    # elimination, which grows fast; beyond this size the constraints cost
    # more than they decide, and dropping them never affects soundness
    if len(basis) > 28:
        return basis
    nvars = basis[0].nvars
    rows = [[b.evaluate(p) for b in basis] for p in zeros]
    # the line stage costs a Hessian kernel and one restriction per basis
    # element per flat direction; skip it for huge zero sets
    if F is not None and len(zeros) > 48:
        F = None
    if F is not None:
        for p in zeros:
            for u in _kernel_directions(F, p):
                line = restrict_to_line(F, u, p)
                if line.is_zero():
                    half = max(b.total_degree() for b in basis) + 1
                else:
                    order = next(i for i, c in enumerate(line.coeffs) if c)
                    half = (order + 1) // 2
                if half <= 0:
                    continue
                blines = [restrict_to_line(b, u, p) for b in basis]
                for s in range(half):
                    rows.append(
                        [bl.coeffs[s] if s < len(bl.coeffs) else Fraction(0) for bl in blines]
                    )
    sol = solve_affine_family(rows, [Fraction(0)] * len(rows), len(basis))
    assert sol is not None  # homogeneous system is always consistent
    _, null = sol
    if len(null) == len(basis):
        return basis
    out = []
    for v in null:
        acc = Polynomial.zero(nvars)
        for k, c in enumerate(v):
            if c:
                acc = acc + basis[k] * c
        out.append(acc)
    return out


# -- numeric feasibility -------------------------------------------------------


def solve_sdp(sys: GramSystem, settings: SdpSettings):
    """Find a numerically PSD point in the affine Gram family.

    Alternating projections between the PSD cone (eigenvalue clamping) and
    the affine family, run over a decreasing ladder of interiority margins so
    that strictly feasible problems return well-conditioned interior points.
    Returns a float unknown-vector or None (numerically infeasible).
    """
    n = sys.size
    x0 = np.array([float(v) for v in sys.particular_vector()])
    npairs = len(sys.pairs)

    rows = np.fromiter((i for i, _ in sys.pairs), dtype=np.int64, count=npairs)
    cols = np.fromiter((j for _, j in sys.pairs), dtype=np.int64, count=npairs)

    def to_matrix(x):
        M = np.zeros((n, n))
        M[rows, cols] = x[:npairs]
        M[cols, rows] = x[:npairs]
        return M

    def from_matrix(M, extra):
        return np.concatenate([M[rows, cols], extra])

    if sys._eqs is not None:
        neq = len(sys._eqs)
        eq_of_pair = np.zeros(npairs, dtype=np.int64)
        cvec = np.zeros(npairs)
        rhs = np.zeros(neq)
        wvec = np.array([float(w) for w in sys.weights])
        for e, (pair_idxs, coeffs, r) in enumerate(sys._eqs):
            rhs[e] = float(r)
            for k, c in zip(pair_idxs, coeffs):
                eq_of_pair[k] = e
                cvec[k] = float(c)
        denom = np.bincount(eq_of_pair, weights=cvec * cvec / wvec, minlength=neq)

        def proj_affine(y):
            s = np.bincount(eq_of_pair, weights=cvec * y[:npairs], minlength=neq)
            nu = np.where(denom > 0, (rhs - s) / np.where(denom > 0, denom, 1.0), 0.0)
            out = y.copy()
            out[:npairs] = y[:npairs] + nu[eq_of_pair] * cvec / wvec
            return out

    else:
        null = sys.nullspace_vectors()
        if not null:
            def proj_affine(y):
                return x0.copy()
        else:
            Nmat = np.array([[float(v) for v in vec] for vec in null]).T  # u x m
            w = np.array([float(wt) for wt in sys.weights] + [1.0] * sys.extra)
            WN = Nmat * w[:, None]
            gram = Nmat.T @ WN
            gram_inv = np.linalg.pinv(gram)

            def proj_affine(y):
                lam = gram_inv @ (WN.T @ (y - x0))
                return x0 + Nmat @ lam

    scale = max(1.0, float(np.max(np.abs(x0[:npairs]))) if npairs else 1.0)
    tol = settings.feasibility_tolerance * scale
    margins = [1e-2 * scale, 1e-4 * scale, 0.0]
    per_stage = max(50, settings.max_iterations // len(margins))

    x = proj_affine(x0.copy())
    best_x, best_min = None, -np.inf
    for margin in margins:
        prev = None
        for _ in range(per_stage):
            M = to_matrix(x)
            eigvals, eigvecs = np.linalg.eigh(M)
            lam_min = float(eigvals[0])
            if lam_min > best_min:
                best_min, best_x = lam_min, x.copy()
            if margin > 0 and lam_min >= 0.4 * margin:
                return x
            if margin == 0 and lam_min >= -tol:
                return x
            clamped = np.clip(eigvals, margin, None)
            Mp = (eigvecs * clamped) @ eigvecs.T
            y = from_matrix(Mp, x[npairs:])
            x_new = proj_affine(y)
            if prev is not None and float(np.max(np.abs(x_new - prev))) < 1e-15 * scale:
                x = x_new
                break
            prev = x.copy()
            x = x_new
    if best_x is not None and best_min >= -tol:
        return best_x
    return None


# -- certificates ---------------------------------------------------------------


@dataclass
class SosCertificate:
    """Exact witness that v^T G v = (sum x_i^2)^N * target - multiplier*modulus."""

    basis: list[Polynomial]
    gram: list[list[Fraction]]
    denominator_power: int
    target: Polynomial
    ldl: LdlResult
    multiplier: Optional[Polynomial] = None
    modulus: Optional[Polynomial] = None

    def certified_form(self) -> Polynomial:
        """(sum x_i^2)^N * target, the form the Gram matrix certifies."""
        n = self.target.nvars
        s2 = sum(
            (Polynomial.variable(n, i) * Polynomial.variable(n, i) for i in range(n)),
            Polynomial.zero(n),
        )
        return self.target * s2**self.denominator_power

    def verify(self) -> bool:
        """Re-check the certificate from scratch, exactly."""
        n = self.target.nvars
        acc = Polynomial.zero(n)
        for i, bi in enumerate(self.basis):
            for j, bj in enumerate(self.basis):
                c = self.gram[i][j]
                if c:
                    acc = acc + bi * bj * c
        expected = self.certified_form()
        if self.multiplier is not None and self.modulus is not None:
            expected = expected - self.multiplier * self.modulus
        if acc != expected:
            return False
        if not self.ldl.is_psd or any(d < 0 for d in self.ldl.D):
            return False
        m = len(self.gram)
        perm, L, D = self.ldl.perm, self.ldl.L, self.ldl.D
        for r in range(m):
            for c in range(m):
                v = sum(L[r][k] * D[k] * L[c][k] for k in range(min(r, c) + 1))
                if v != self.gram[perm[r]][perm[c]]:
                    return False
        return True

    def to_jsonable(self, names: Optional[list[str]] = None) -> dict:
        names = names or default_names(self.target.nvars)

        def frac(x: Fraction) -> str:
            return f"{x.numerator}/{x.denominator}"

        return {
            "vars": list(names),
            "basis": [format_poly(b, names) for b in self.basis],
            "gram": [[frac(x) for x in row] for row in self.gram],
            "N": self.denominator_power,
            "target": format_poly(self.target, names),
            "multiplier": None if self.multiplier is None else format_poly(self.multiplier, names),
            "modulus": None if self.modulus is None else format_poly(self.modulus, names),
            "ldl": {
                "perm": list(self.ldl.perm),
                "L": [[frac(x) for x in row] for row in self.ldl.L],
                "D": [frac(x) for x in self.ldl.D],
            },
        }

    def to_json(self, names: Optional[list[str]] = None) -> str:
        return json.dumps(self.to_jsonable(names), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "SosCertificate":
        data = json.loads(text)
        names = data["vars"]
        basis = [parse_poly(s, names) for s in data["basis"]]
        gram = [[Fraction(x) for x in row] for row in data["gram"]]
        ldl = LdlResult(
            is_psd=True,
            perm=list(data["ldl"]["perm"]),
            L=[[Fraction(x) for x in row] for row in data["ldl"]["L"]],
            D=[Fraction(x) for x in data["ldl"]["D"]],
        )
        mult = data.get("multiplier")
        mod = data.get("modulus")
        return cls(
            basis=basis,
            gram=gram,
            denominator_power=int(data["N"]),
            target=parse_poly(data["target"], names),
            ldl=ldl,
            multiplier=None if mult is None else parse_poly(mult, names),
            modulus=None if mod is None else parse_poly(mod, names),
        )


def _denominator_ladder(start: int) -> list[int]:
    return [start, start * 16, start * 256, start * 4096]


def _certify_from_vector(
    sys: GramSystem,
    vec: list[Fraction],
    target: Polynomial,
    N: int,
) -> Optional[SosCertificate]:
    G = sys.matrix_from_vector(vec)
    res = ldl_psd(G)
    if not res.is_psd:
        return None
    multiplier = None
    if sys.modulus is not None:
        # the family solves v^T G v + p*f = F, i.e. F - p*f is the square sum
        terms = {}
        for t, m in enumerate(sys.mult_monos):
            c = vec[len(sys.pairs) + t]
            if c:
                terms[m] = c
        multiplier = Polynomial(target.nvars, terms)
    return SosCertificate(
        basis=list(sys.basis),
        gram=G,
        denominator_power=N,
        target=target,
        ldl=res,
        multiplier=multiplier,
        modulus=sys.modulus,
    )


def _round_and_certify(
    sys: GramSystem,
    xfloat,
    settings: SdpSettings,
    target: Polynomial,
    N: int,
) -> Optional[SosCertificate]:
    for bound in _denominator_ladder(settings.rounding_denominator_bound):
        rounded = [Fraction(float(v)).limit_denominator(bound) for v in xfloat]
        vec = sys.project_exact(rounded)
        cert = _certify_from_vector(sys, vec, target, N)
        if cert is not None:
            return cert
    return None


def _sum_of_var_squares(nvars: int) -> Polynomial:
    acc = Polynomial.zero(nvars)
    for i in range(nvars):
        v = Polynomial.variable(nvars, i)
        acc = acc + v * v
    return acc


def certify_sos(
    F: Polynomial,
    max_denominator_power: int = 0,
    settings: Optional[SdpSettings] = None,
    basis: Optional[list[Polynomial]] = None,
) -> Verdict:
    """Decide whether (sum x_i^2)^N * F is a sum of squares for some N <= budget.

    CERTIFIED_YES carries an exact SosCertificate.  CERTIFIED_NO is issued
    only on an exact refutation (unique Gram point that is not PSD, or no
    Gram matrix at all); it soundly implies F itself is not a sum of squares.
    With a caller-supplied basis the refutation is relative to that basis,
    which is conclusive exactly when the basis provably contains every
    possible square (e.g. forced by vanishing points).
    """
    settings = settings or SdpSettings()
    if F.is_zero():
        empty = LdlResult(True, [], [], [])
        cert = SosCertificate(basis=[], gram=[], denominator_power=0, target=F, ldl=empty)
        return certified_yes(witness=cert, detail="zero polynomial is the empty sum of squares")
    if not F.is_homogeneous():
        raise ValueError("target must be homogeneous")
    if F.total_degree() % 2:
        raise ValueError("target must have even degree")

    zeros, neg = scan_small_points(F)
    if neg is not None:
        return certified_no(
            witness={"point": neg, "value": F.evaluate(neg)},
            detail="target is negative at an integer point, hence not a sum of squares",
        )
    obstruction = second_order_obstruction(F, zeros)
    if obstruction is not None:
        return certified_no(
            witness=obstruction,
            detail=f"local obstruction at a real zero: {obstruction['kind']}; "
            "no denominator power can repair it",
        )

    s2 = _sum_of_var_squares(F.nvars)
    refuted: list[int] = []
    refute_witness = None
    refute_detail = ""
    for N in range(max_denominator_power + 1):
        FN = F * s2**N if N else F
        use_basis = basis if basis is not None else _auto_basis(FN)
        use_basis = constrain_basis_to_zeros(list(use_basis), zeros, F)
        if not use_basis:
            refuted.append(N)
            refute_witness = {"N": N, "zeros": zeros}
            refute_detail = "no candidate square vanishes at all exact zeros of the target"
            continue
        try:
            sys = GramSystem(FN, list(use_basis))
        except GramInfeasibleError as exc:
            refuted.append(N)
            refute_witness = {"N": N}
            refute_detail = f"no Gram matrix exists over the basis at denominator power {N}: {exc}"
            continue
        if sys.nullspace_dim == 0:
            vec = sys.particular_vector()
            cert = _certify_from_vector(sys, vec, F, N)
            if cert is not None:
                return certified_yes(witness=cert, detail=f"unique Gram matrix is PSD (N={N})")
            refuted.append(N)
            refute_witness = {"N": N, "gram": sys.particular_matrix()}
            refute_detail = f"unique Gram matrix at denominator power {N} is not PSD"
            continue
        xfloat = solve_sdp(sys, settings)
        if xfloat is None:
            continue
        cert = _round_and_certify(sys, xfloat, settings, F, N)
        if cert is not None:
            return certified_yes(witness=cert, detail=f"exact PSD Gram certificate (N={N})")
    # not SOS at power N implies not SOS at any smaller power (multiply by
    # the square sum), so an exact refutation at the top power settles all
    if refuted and refuted[-1] == max_denominator_power:
        return certified_no(
            witness=refute_witness,
            detail=f"{refute_detail}; exact refutation at power {refuted[-1]} "
            "covers every smaller denominator power",
        )
    if refuted:
        return unknown(
            witness=refute_witness,
            detail=f"exactly refuted up to denominator power {max(refuted)} "
            f"(in particular the target itself is not a sum of squares), "
            f"no certificate found through power {max_denominator_power}",
        )
    return unknown(detail=f"no SOS certificate found for denominator powers 0..{max_denominator_power}")


def certify_sos_mod_f(
    F: Polynomial,
    f: Polynomial,
    settings: Optional[SdpSettings] = None,
) -> Verdict:
    """Search for a multiplier p with F - p*f a sum of squares.

    The multiplier's coefficients (homogeneous of degree deg F - deg f) join
    the Gram unknowns as exact linear variables.  CERTIFIED_NO is only
    available when the combined affine family is a single point.
    """
    settings = settings or SdpSettings()
    if f.is_zero():
        raise ValueError("modulus polynomial must be nonzero")
    if not F.is_homogeneous() or not f.is_homogeneous():
        raise ValueError("both polynomials must be homogeneous")
    d = f.total_degree()
    if F.is_zero():
        empty = LdlResult(True, [], [], [])
        cert = SosCertificate(
            basis=[], gram=[], denominator_power=0, target=F, ldl=empty,
            multiplier=Polynomial.zero(F.nvars), modulus=f,
        )
        return certified_yes(witness=cert, detail="zero polynomial: empty sum with zero multiplier")
    if F.total_degree() != 2 * d - 2:
        raise ValueError(f"deg F = {F.total_degree()} but 2*deg f - 2 = {2 * d - 2}")
    if d < 2:
        raise ValueError("modulus degree must be at least 2")
    basis = [Polynomial.monomial(F.nvars, m) for m in monomials_of_degree(F.nvars, d - 1)]
    mult_monos = monomials_of_degree(F.nvars, d - 2)
    sys = GramSystem(F, basis, modulus=f, mult_monos=mult_monos)
    if sys.nullspace_dim == 0:
        vec = sys.particular_vector()
        cert = _certify_from_vector(sys, vec, F, 0)
        if cert is not None:
            return certified_yes(witness=cert, detail="unique Gram matrix is PSD")
        return certified_no(
            witness={"gram": sys.particular_matrix()},
            detail="unique Gram matrix of the modulo-f family is not PSD",
        )
    xfloat = solve_sdp(sys, settings)
    if xfloat is not None:
        cert = _round_and_certify(sys, xfloat, settings, F, 0)
        if cert is not None:
            return certified_yes(witness=cert, detail="exact PSD Gram certificate modulo f")
    return unknown(detail="no modulo-f SOS certificate found (family is not a single point)")


def sos_cone_membership(
    inst,
    a: Sequence,
    max_denominator_power: int = 2,
    settings: Optional[SdpSettings] = None,
) -> Verdict:
    """Inner SOS relaxation of closed hyperbolicity-cone membership.

    CERTIFIED_YES (the membership Wronskian times a denominator power is a
    sum of squares) soundly places a in the closed cone.  The relaxation is
    one-sided: an SOS refutation never disproves membership, so it is
    reported as UNKNOWN with SOS_REFUTED in the detail.
    """
    from .hypercone import wronskian_delta

    delta = wronskian_delta(inst.f, inst.e, a)
    v = certify_sos(delta, max_denominator_power, settings)
    if v.is_yes:
        return certified_yes(witness=v.witness, detail=f"membership Wronskian certified SOS ({v.detail})")
    if v.is_no:
        return unknown(
            witness=v.witness,
            detail=f"SOS_REFUTED: {v.detail}; the relaxation is one-sided so membership stays undecided",
        )
    return unknown(detail=f"relaxation inconclusive: {v.detail}")
