"""Exact rational linear algebra: affine solution families, LDL^T, determinants.

Everything here runs over Fraction.  The LDL^T factorization with symmetric
pivoting is the positive-semidefiniteness oracle used by the certificate
checkers: a completed factorization with nonnegative pivots proves PSD, and
a negative pivot or a zero diagonal with a nonzero residual row disproves it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

Mat = list  # list[list[Fraction]]


def frac_matrix(rows: Sequence[Sequence]) -> Mat:
    return [[Fraction(x) for x in row] for row in rows]


def mat_identity(n: int) -> Mat:
    return [[Fraction(1) if i == j else Fraction(0) for j in range(n)] for i in range(n)]


def solve_affine_family(
    rows: list[list[Fraction]], rhs: list[Fraction], nunknowns: int
) -> Optional[tuple[list[Fraction], list[list[Fraction]]]]:
    """Solve A x = b exactly; return (particular, nullspace basis) or None.

    None means the system is inconsistent.  The particular solution sets all
    free variables to zero; the nullspace basis has one vector per free
    variable (reduced row echelon form).
    """
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    m = len(aug)
    pivot_cols: list[int] = []
    r = 0
    for c in range(nunknowns):
        pivot = None
        for i in range(r, m):
            if aug[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        aug[r], aug[pivot] = aug[pivot], aug[r]
        pv = aug[r][c]
        if pv != 1:
            aug[r] = [x / pv for x in aug[r]]
        for i in range(m):
            if i != r and aug[i][c] != 0:
                factor = aug[i][c]
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[r])]
        pivot_cols.append(c)
        r += 1
        if r == m:
            break
    for i in range(r, m):
        if aug[i][nunknowns] != 0:
            return None
    particular = [Fraction(0)] * nunknowns
    for row, c in enumerate(pivot_cols):
        particular[c] = aug[row][nunknowns]
    pivot_set = set(pivot_cols)
    null_basis: list[list[Fraction]] = []
    for fc in range(nunknowns):
        if fc in pivot_set:
            continue
        v = [Fraction(0)] * nunknowns
        v[fc] = Fraction(1)
        for row, c in enumerate(pivot_cols):
            v[c] = -aug[row][fc]
        null_basis.append(v)
    return particular, null_basis


def solve_linear(A: Mat, b: list[Fraction]) -> list[Fraction]:
    """Exact solve of a square nonsingular system by Gaussian elimination."""
    n = len(A)
    aug = [[Fraction(x) for x in row] + [Fraction(bb)] for row, bb in zip(A, b)]
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if aug[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            raise ArithmeticError("singular system")
        aug[c], aug[pivot] = aug[pivot], aug[c]
        pv = aug[c][c]
        for i in range(c + 1, n):
            if aug[i][c] != 0:
                factor = aug[i][c] / pv
                aug[i] = [x - factor * y for x, y in zip(aug[i], aug[c])]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        acc = aug[i][n] - sum(aug[i][j] * x[j] for j in range(i + 1, n))
        x[i] = acc / aug[i][i]
    return x


def mat_det(A: Mat) -> Fraction:
    """Exact determinant of a rational matrix (Gaussian elimination)."""
    n = len(A)
    if any(len(row) != n for row in A):
        raise ValueError("matrix must be square")
    work = [[Fraction(x) for x in row] for row in A]
    det = Fraction(1)
    for c in range(n):
        pivot = None
        for i in range(c, n):
            if work[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            return Fraction(0)
        if pivot != c:
            work[c], work[pivot] = work[pivot], work[c]
            det = -det
        pv = work[c][c]
        det *= pv
        for i in range(c + 1, n):
            if work[i][c] != 0:
                factor = work[i][c] / pv
                work[i] = [x - factor * y for x, y in zip(work[i], work[c])]
    return det


@dataclass
class LdlResult:
    """Outcome of pivoted LDL^T on a symmetric rational matrix.

    When `is_psd`, the factorization satisfies, exactly,
        A[perm[r]][perm[c]] == (L D L^T)[r][c]
    with L unit lower triangular and D the nonnegative pivot list.
    """

    is_psd: bool
    perm: list[int]
    L: Mat
    D: list[Fraction]
    reason: str = ""

    @property
    def is_pd(self) -> bool:
        return self.is_psd and all(d > 0 for d in self.D)

    @property
    def rank(self) -> int:
        return sum(1 for d in self.D if d != 0)


def ldl_psd(A: Mat) -> LdlResult:
    """Pivoted LDL^T as an exact PSD decision.

    Pivots on the largest remaining diagonal entry.  A negative diagonal
    disproves PSD outright; a zero maximal diagonal forces the whole
    remaining block to vanish (a zero diagonal with a nonzero off-diagonal
    entry witnesses a negative 2x2 minor).
    """
    n = len(A)
    for i, row in enumerate(A):
        if len(row) != n:
            raise ValueError("matrix must be square")
        for j in range(i):
            if A[i][j] != A[j][i]:
                raise ValueError("matrix must be symmetric")
    work = [[Fraction(x) for x in row] for row in A]
    perm = list(range(n))
    L = mat_identity(n)
    D = [Fraction(0)] * n
    for k in range(n):
        idx = max(range(k, n), key=lambda i: work[i][i])
        if work[idx][idx] < 0:
            return LdlResult(False, perm, L, D, reason=f"negative diagonal pivot {work[idx][idx]}")
        if work[idx][idx] == 0:
            for i in range(k, n):
                if work[i][i] < 0:
                    return LdlResult(False, perm, L, D, reason=f"negative diagonal entry {work[i][i]}")
                for j in range(k, n):
                    if work[i][j] != 0:
                        return LdlResult(
                            False, perm, L, D,
                            reason="zero diagonal with nonzero off-diagonal residual",
                        )
            return LdlResult(True, perm, L, D)
        if idx != k:
            work[k], work[idx] = work[idx], work[k]
            for row in work:
                row[k], row[idx] = row[idx], row[k]
            perm[k], perm[idx] = perm[idx], perm[k]
            for j in range(k):
                L[k][j], L[idx][j] = L[idx][j], L[k][j]
        d = work[k][k]
        D[k] = d
        for i in range(k + 1, n):
            L[i][k] = work[i][k] / d
        for i in range(k + 1, n):
            lik = L[i][k]
            if lik == 0:
                continue
            for j in range(k + 1, n):
                work[i][j] -= lik * work[k][j]
        for i in range(k + 1, n):
            work[i][k] = Fraction(0)
            work[k][i] = Fraction(0)
    return LdlResult(True, perm, L, D)


def ldl_reassemble(res: LdlResult) -> Mat:
    """Return the matrix B with B[r][c] = (L D L^T)[r][c] (permuted order)."""
    n = len(res.D)
    out = [[Fraction(0)] * n for _ in range(n)]
    for r in range(n):
        for c in range(n):
            out[r][c] = sum(res.L[r][k] * res.D[k] * res.L[c][k] for k in range(min(r, c) + 1))
    return out
