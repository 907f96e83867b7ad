"""Exact real-root counting, isolation, and interlacing for rational polynomials.

Sturm sequences drive everything.  With the convention that zero values are
dropped before counting sign variations, V(a) - V(b) for the standard chain
of the square-free part counts the distinct real roots in the half-open
interval (a, b]; infinite endpoints are replaced by a Cauchy bound.  Root
equality across two polynomials is decided only through a gcd witness,
never by tolerance, so every verdict here is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .polycore import UniPoly, squarefree_decomposition, squarefree_part, uni_gcd
from .verdicts import Verdict, certified_no, certified_yes


class SturmSequence:
    """Chain p, p', then negated euclidean remainders (zero tail dropped)."""

    def __init__(self, p: UniPoly):
        if p.is_zero():
            raise ValueError("zero polynomial")
        chain = [p, p.derivative()]
        while not chain[-1].is_zero():
            r = chain[-2].rem(chain[-1])
            chain.append(-r)
        chain.pop()
        self.chain = chain

    def variations_at(self, x: Fraction) -> int:
        signs = []
        for q in self.chain:
            v = q(x)
            if v:
                signs.append(1 if v > 0 else -1)
        return _count_changes(signs)

    def root_bound(self) -> Fraction:
        """Cauchy bound of the chain's first element.

        The variation count is constant on intervals free of roots of that
        element, so evaluating at +-bound is the same as at +-infinity.
        """
        return cauchy_bound(self.chain[0])


def _count_changes(signs: list[int]) -> int:
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def cauchy_bound(p: UniPoly) -> Fraction:
    """1 + max |a_i / a_deg|: strictly bounds the absolute value of all roots."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    lc = abs(p.leading())
    return 1 + max((abs(c) / lc for c in p.coeffs[:-1]), default=Fraction(0))


def sturm_root_count(p: UniPoly, lo: Optional[Fraction] = None, hi: Optional[Fraction] = None) -> int:
    """Number of distinct real roots of p in (lo, hi]; None means +-infinity."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.degree() == 0:
        return 0
    q = squarefree_part(p)
    if q.degree() == 0:
        return 0
    return _sturm_count_sqfree(SturmSequence(q), lo, hi)


def _sturm_count_sqfree(seq: SturmSequence, lo: Optional[Fraction], hi: Optional[Fraction]) -> int:
    if lo is None or hi is None:
        bound = seq.root_bound()
        lo = -bound if lo is None else lo
        hi = bound if hi is None else hi
    return seq.variations_at(Fraction(lo)) - seq.variations_at(Fraction(hi))


@dataclass
class IsolatingInterval:
    """One distinct real root: in (lo, hi] when lo < hi, exactly lo when lo == hi.

    `factor` is the square-free polynomial this root belongs to; it is kept so
    callers can refine the interval further.
    """

    lo: Fraction
    hi: Fraction
    multiplicity: int
    factor: UniPoly

    @property
    def is_exact(self) -> bool:
        return self.lo == self.hi

    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains_point(self, x: Fraction) -> bool:
        if self.is_exact:
            return x == self.lo
        return self.lo < x <= self.hi


@dataclass
class RootList:
    intervals: list[IsolatingInterval]
    degree: int

    def total_multiplicity(self) -> int:
        return sum(iv.multiplicity for iv in self.intervals)


def _refine_step(iv: IsolatingInterval, seq: SturmSequence) -> IsolatingInterval:
    """Halve a non-exact isolating interval (or collapse it onto a found root)."""
    if iv.is_exact:
        return iv
    mid = (iv.lo + iv.hi) / 2
    if iv.factor(mid) == 0:
        return IsolatingInterval(mid, mid, iv.multiplicity, iv.factor)
    if _sturm_count_sqfree(seq, mid, iv.hi) == 1:
        return IsolatingInterval(mid, iv.hi, iv.multiplicity, iv.factor)
    return IsolatingInterval(iv.lo, mid, iv.multiplicity, iv.factor)


def _isolate_sqfree(q: UniPoly, precision: Fraction, multiplicity: int) -> list[IsolatingInterval]:
    """Disjoint isolating intervals for all real roots of square-free q."""
    if q.degree() <= 0:
        return []
    seq = SturmSequence(q)
    bound = cauchy_bound(q)
    total = _sturm_count_sqfree(seq, -bound, bound)
    out: list[IsolatingInterval] = []
    stack = [(-bound, bound, total)]
    while stack:
        lo, hi, count = stack.pop()
        if count == 0:
            continue
        if count == 1:
            out.append(_refine_interval(q, seq, lo, hi, precision, multiplicity))
            continue
        mid = (lo + hi) / 2
        left = _sturm_count_sqfree(seq, lo, mid)
        stack.append((lo, mid, left))
        stack.append((mid, hi, count - left))
    out.sort(key=lambda iv: (iv.lo, iv.hi))
    return out


def _refine_interval(q, seq, lo, hi, precision, multiplicity) -> IsolatingInterval:
    # invariant: exactly one root of q lies in (lo, hi]
    if q(hi) == 0:
        return IsolatingInterval(hi, hi, multiplicity, q)
    while hi - lo > precision or q(lo) == 0:
        mid = (lo + hi) / 2
        if q(mid) == 0:
            return IsolatingInterval(mid, mid, multiplicity, q)
        if _sturm_count_sqfree(seq, mid, hi) == 1:
            lo = mid
        else:
            hi = mid
    return IsolatingInterval(lo, hi, multiplicity, q)


def _disjoint(a: IsolatingInterval, b: IsolatingInterval) -> bool:
    if a.is_exact and b.is_exact:
        return a.lo != b.lo
    if a.is_exact:
        return not b.contains_point(a.lo)
    if b.is_exact:
        return not a.contains_point(b.lo)
    return a.hi <= b.lo or b.hi <= a.lo


def isolate_real_roots(p: UniPoly, precision: Fraction = Fraction(1, 1024)) -> RootList:
    """Isolate every distinct real root of p with its multiplicity.

    Multiplicities come from the square-free (Yun) decomposition; intervals
    across different square-free factors are refined until pairwise disjoint.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    precision = Fraction(precision)
    if precision <= 0:
        raise ValueError("precision must be positive")
    groups: list[tuple[UniPoly, SturmSequence, list[IsolatingInterval]]] = []
    for factor, mult in squarefree_decomposition(p):
        ivs = _isolate_sqfree(factor, precision, mult)
        if ivs:
            groups.append((factor, SturmSequence(factor), ivs))
    # roots of distinct square-free factors differ, so bisection separates them
    for gi in range(len(groups)):
        for gj in range(gi + 1, len(groups)):
            _, seq_i, ivs_i = groups[gi]
            _, seq_j, ivs_j = groups[gj]
            for a in range(len(ivs_i)):
                for b in range(len(ivs_j)):
                    while not _disjoint(ivs_i[a], ivs_j[b]):
                        ivs_i[a] = _refine_step(ivs_i[a], seq_i)
                        ivs_j[b] = _refine_step(ivs_j[b], seq_j)
    intervals = [iv for _, _, ivs in groups for iv in ivs]
    intervals.sort(key=lambda iv: (iv.lo, iv.hi))
    return RootList(intervals, p.degree())


def is_real_rooted(p: UniPoly) -> bool:
    """True iff the real roots of p, counted with multiplicity, number deg p."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.degree() == 0:
        return True
    total = 0
    for factor, mult in squarefree_decomposition(p):
        total += mult * sturm_root_count(factor)
    return total == p.degree()


def compare_roots(a: IsolatingInterval, b: IsolatingInterval) -> int:
    """Exact order of two isolated algebraic roots: -1, 0, or +1.

    Equality is decided by a gcd witness: the roots coincide iff
    gcd(factor_a, factor_b) has a root inside the intersection of the two
    isolating intervals.  Otherwise bisection separates the intervals.
    """
    if a.is_exact and b.is_exact:
        return -1 if a.lo < b.lo else (0 if a.lo == b.lo else 1)
    if a.is_exact:
        return -compare_roots(b, a)
    if b.is_exact:
        x = b.lo
        if not a.contains_point(x):
            return -1 if a.hi <= x else 1
        if a.factor(x) == 0:
            return 0
        seq = SturmSequence(a.factor)
        while a.contains_point(x):
            a = _refine_step(a, seq)
        return -1 if a.hi <= x else 1
    if a.factor == b.factor:
        w = a.factor
    else:
        w = uni_gcd(a.factor, b.factor)
    wseq = SturmSequence(w) if w.degree() >= 1 else None
    seq_a = SturmSequence(a.factor)
    seq_b = SturmSequence(b.factor)
    while True:
        if a.is_exact or b.is_exact:
            return compare_roots(a, b)
        if _disjoint(a, b):
            return -1 if a.hi <= b.lo else 1
        cap_lo = max(a.lo, b.lo)
        cap_hi = min(a.hi, b.hi)
        if wseq is not None and cap_lo < cap_hi and _sturm_count_sqfree(wseq, cap_lo, cap_hi) >= 1:
            # the common root lies in both isolating intervals, so it is both roots
            return 0
        a = _refine_step(a, seq_a)
        b = _refine_step(b, seq_b)


def sign_at_root(q: UniPoly, root: IsolatingInterval) -> int:
    """Exact sign of q at an isolated algebraic root (-1, 0, +1)."""
    if q.is_zero():
        return 0
    if root.is_exact:
        v = q(root.lo)
        return 0 if v == 0 else (1 if v > 0 else -1)
    w = uni_gcd(root.factor, q)
    if w.degree() >= 1 and _sturm_count_sqfree(SturmSequence(w), root.lo, root.hi) >= 1:
        return 0
    seq = SturmSequence(root.factor)
    qsf = squarefree_part(q)
    qseq = SturmSequence(qsf) if qsf.degree() >= 1 else None
    iv = root
    while True:
        no_q_root = qseq is None or _sturm_count_sqfree(qseq, iv.lo, iv.hi) == 0
        if no_q_root and q(iv.lo) != 0:
            v = q(iv.hi)
            return 1 if v > 0 else -1
        iv = _refine_step(iv, seq)
        if iv.is_exact:
            v = q(iv.lo)
            return 0 if v == 0 else (1 if v > 0 else -1)


def roots_interlace(f: UniPoly, g: UniPoly, strict: bool = False) -> Verdict:
    """Do the roots of g weave between the roots of f (deg g = deg f - 1)?

    Both polynomials must be real-rooted (otherwise CERTIFIED_NO).  With
    roots a_1 <= ... <= a_d of f and b_1 <= ... <= b_{d-1} of g, counted
    with multiplicity, the verdict checks a_i <= b_i <= a_{i+1} for every i
    (strictly when strict=True).  All comparisons are exact.
    """
    if f.is_zero() or g.is_zero():
        raise ValueError("zero polynomial")
    d = f.degree()
    if g.degree() != d - 1:
        raise ValueError(f"degree mismatch: deg g = {g.degree()}, need deg f - 1 = {d - 1}")
    if not is_real_rooted(f):
        return certified_no(witness="f", detail="f is not real-rooted")
    if not is_real_rooted(g):
        return certified_no(witness="g", detail="g is not real-rooted")
    if d <= 1:
        return certified_yes(detail="trivial: no interior roots required")

    rf = isolate_real_roots(f)
    rg = isolate_real_roots(g)

    # merge the distinct roots into one exactly ordered list; each root of f
    # or g gets an index into that list, equal roots sharing an index
    merged: list[IsolatingInterval] = []
    fpos: list[tuple[int, int]] = []  # (merged index, multiplicity)
    gpos: list[tuple[int, int]] = []
    for iv in rf.intervals:
        merged.append(iv)
        fpos.append((len(merged) - 1, iv.multiplicity))
    for iv in rg.intervals:
        placed = False
        for k, mv in enumerate(merged):
            c = compare_roots(iv, mv)
            if c == 0:
                gpos.append((k, iv.multiplicity))
                placed = True
                break
            if c < 0:
                merged.insert(k, iv)
                fpos = [(idx + 1 if idx >= k else idx, m) for idx, m in fpos]
                gpos = [(idx + 1 if idx >= k else idx, m) for idx, m in gpos]
                gpos.append((k, iv.multiplicity))
                placed = True
                break
        if not placed:
            merged.append(iv)
            gpos.append((len(merged) - 1, iv.multiplicity))

    alpha: list[int] = []
    for idx, mult in fpos:
        alpha.extend([idx] * mult)
    beta: list[int] = []
    for idx, mult in sorted(gpos):
        beta.extend([idx] * mult)
    alpha.sort()

    for i in range(d - 1):
        lo_ok = alpha[i] < beta[i] if strict else alpha[i] <= beta[i]
        hi_ok = beta[i] < alpha[i + 1] if strict else beta[i] <= alpha[i + 1]
        if not (lo_ok and hi_ok):
            side = "left" if not lo_ok else "right"
            return certified_no(
                witness={"index": i, "violation": side},
                detail=f"interlacing fails at root index {i} ({side} inequality)",
            )
    return certified_yes(detail="strict interlacing" if strict else "interlacing")
