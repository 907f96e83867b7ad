"""Exact multivariate and univariate polynomial arithmetic over the rationals.

A multivariate polynomial is a map from exponent tuples to nonzero Fraction
coefficients; the zero polynomial stores no terms.  All operations are exact
(no floating point anywhere in this module), which is what makes the
divisibility and perfect-square decisions downstream trustworthy.

Monomials are ordered graded lexicographically: compare total degree first,
then the exponent tuples with the first variable most significant.  This is
the order used for canonical formatting, for single-divisor long division,
and for the greedy square-root extraction.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence

Mono = tuple[int, ...]


def grlex_key(mono: Mono) -> tuple[int, Mono]:
    """Sort key realizing the graded lexicographic order (ascending)."""
    return (sum(mono), mono)


def mono_mul(a: Mono, b: Mono) -> Mono:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Mono, b: Mono) -> bool:
    """True if the monomial with exponents a divides the one with exponents b."""
    return all(x <= y for x, y in zip(a, b))


class Polynomial:
    """Immutable sparse polynomial over Q in a fixed number of variables."""

    __slots__ = ("nvars", "terms")

    def __init__(self, nvars: int, terms: Optional[dict] = None):
        if nvars < 0:
            raise ValueError("nvars must be nonnegative")
        clean: dict[Mono, Fraction] = {}
        if terms:
            for mono, coeff in terms.items():
                c = Fraction(coeff)
                if c == 0:
                    continue
                mono = tuple(mono)
                if len(mono) != nvars or any(e < 0 for e in mono):
                    raise ValueError(f"bad exponent tuple {mono} for nvars={nvars}")
                clean[mono] = c
        object.__setattr__(self, "nvars", nvars)
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, name, value):
        raise AttributeError("Polynomial is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, nvars: int) -> "Polynomial":
        return cls(nvars, {})

    @classmethod
    def const(cls, nvars: int, c) -> "Polynomial":
        return cls(nvars, {(0,) * nvars: Fraction(c)})

    @classmethod
    def variable(cls, nvars: int, i: int) -> "Polynomial":
        if not 0 <= i < nvars:
            raise ValueError(f"variable index {i} out of range for nvars={nvars}")
        exps = [0] * nvars
        exps[i] = 1
        return cls(nvars, {tuple(exps): Fraction(1)})

    @classmethod
    def monomial(cls, nvars: int, exps: Sequence[int], coeff=1) -> "Polynomial":
        return cls(nvars, {tuple(exps): Fraction(coeff)})

    # -- basic queries -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def num_terms(self) -> int:
        return len(self.terms)

    def total_degree(self) -> int:
        """Maximum total degree of a term; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def degree_in(self, i: int) -> int:
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def is_multiaffine(self) -> bool:
        return all(e <= 1 for m in self.terms for e in m)

    def leading_term(self) -> tuple[Mono, Fraction]:
        """Largest term under graded lex; raises on the zero polynomial."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        m = max(self.terms, key=grlex_key)
        return m, self.terms[m]

    def sorted_terms(self) -> Iterator[tuple[Mono, Fraction]]:
        """Terms in graded-lex descending order (the canonical order)."""
        for m in sorted(self.terms, key=grlex_key, reverse=True):
            yield m, self.terms[m]

    def coefficient(self, exps: Sequence[int]) -> Fraction:
        return self.terms.get(tuple(exps), Fraction(0))

    # -- arithmetic ----------------------------------------------------------

    def __eq__(self, other) -> bool:
        if isinstance(other, Polynomial):
            return self.nvars == other.nvars and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms.items())))

    def _check_same_ring(self, other: "Polynomial"):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    def __add__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.const(self.nvars, other)
        self._check_same_ring(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return Polynomial(self.nvars, out)

    __radd__ = __add__

    def __neg__(self) -> "Polynomial":
        return Polynomial(self.nvars, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            other = Polynomial.const(self.nvars, other)
        return self + (-other)

    def __rsub__(self, other) -> "Polynomial":
        return Polynomial.const(self.nvars, other) - self

    def __mul__(self, other) -> "Polynomial":
        if not isinstance(other, Polynomial):
            c = Fraction(other)
            return Polynomial(self.nvars, {m: cc * c for m, cc in self.terms.items()})
        self._check_same_ring(other)
        out: dict[Mono, Fraction] = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = mono_mul(ma, mb)
                out[m] = out.get(m, Fraction(0)) + ca * cb
        return Polynomial(self.nvars, out)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Polynomial":
        if k < 0:
            raise ValueError("negative power")
        result = Polynomial.const(self.nvars, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base if k > 1 else base
            k >>= 1
        return result

    # -- calculus and substitution -------------------------------------------

    def evaluate(self, point: Sequence) -> Fraction:
        """Exact value at a rational point."""
        pt = [Fraction(x) for x in point]
        if len(pt) != self.nvars:
            raise ValueError(f"point length {len(pt)} != nvars {self.nvars}")
        total = Fraction(0)
        for m, c in self.terms.items():
            v = c
            for e, x in zip(m, pt):
                if e:
                    v *= x**e
            total += v
        return total

    def partial(self, i: int) -> "Polynomial":
        """Exact partial derivative with respect to variable i."""
        if not 0 <= i < self.nvars:
            raise ValueError(f"variable index {i} out of range")
        out: dict[Mono, Fraction] = {}
        for m, c in self.terms.items():
            e = m[i]
            if e == 0:
                continue
            mm = list(m)
            mm[i] = e - 1
            out[tuple(mm)] = c * e
        return Polynomial(self.nvars, out)

    def substitute_zero(self, i: int) -> "Polynomial":
        """Set variable i to zero (drops every term containing it)."""
        return Polynomial(self.nvars, {m: c for m, c in self.terms.items() if m[i] == 0})

    def __repr__(self) -> str:
        return f"Polynomial(nvars={self.nvars}, {len(self.terms)} terms)"


# -- module-level operations (the public API mirrors these) -------------------


def evaluate(f: Polynomial, point: Sequence) -> Fraction:
    return f.evaluate(point)


def partial_derivative(f: Polynomial, i: int) -> Polynomial:
    return f.partial(i)


def directional_derivative(f: Polynomial, a: Sequence) -> Polynomial:
    """Sum of a_i * df/dx_i; exact and linear in the direction a."""
    avec = [Fraction(x) for x in a]
    if len(avec) != f.nvars:
        raise ValueError(f"direction length {len(avec)} != nvars {f.nvars}")
    out = Polynomial.zero(f.nvars)
    for i, ai in enumerate(avec):
        if ai:
            out = out + f.partial(i) * ai
    return out


def identify_variables(f: Polynomial, mapping: Sequence[int], new_nvars: int) -> Polynomial:
    """Substitute old variable i by new variable mapping[i] (exponents add up)."""
    if len(mapping) != f.nvars:
        raise ValueError("mapping length must equal nvars")
    if any(not 0 <= j < new_nvars for j in mapping):
        raise ValueError("mapping target out of range")
    out: dict[Mono, Fraction] = {}
    for m, c in f.terms.items():
        mm = [0] * new_nvars
        for i, e in enumerate(m):
            mm[mapping[i]] += e
        key = tuple(mm)
        out[key] = out.get(key, Fraction(0)) + c
    return Polynomial(new_nvars, out)


def drop_trailing_variables(f: Polynomial, new_nvars: int) -> Polynomial:
    """Shrink the ring when the trailing variables do not occur in f."""
    for i in range(new_nvars, f.nvars):
        if f.degree_in(i) > 0:
            raise ValueError(f"variable {i} occurs in f")
    return Polynomial(new_nvars, {m[:new_nvars]: c for m, c in f.terms.items()})


# -- univariate polynomials ----------------------------------------------------


class UniPoly:
    """Dense univariate polynomial over Q; index = power of t."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable):
        cs = [Fraction(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("UniPoly is immutable")

    @classmethod
    def zero(cls) -> "UniPoly":
        return cls([])

    def is_zero(self) -> bool:
        return not self.coeffs

    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    def leading(self) -> Fraction:
        if not self.coeffs:
            raise ValueError("zero polynomial")
        return self.coeffs[-1]

    def __call__(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "UniPoly") -> "UniPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return UniPoly(out)

    def __neg__(self) -> "UniPoly":
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other: "UniPoly") -> "UniPoly":
        return self + (-other)

    def __mul__(self, other) -> "UniPoly":
        if not isinstance(other, UniPoly):
            c = Fraction(other)
            return UniPoly([cc * c for cc in self.coeffs])
        if self.is_zero() or other.is_zero():
            return UniPoly.zero()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def derivative(self) -> "UniPoly":
        return UniPoly([c * i for i, c in enumerate(self.coeffs)][1:])

    def monic(self) -> "UniPoly":
        if self.is_zero():
            return self
        lc = self.coeffs[-1]
        return UniPoly([c / lc for c in self.coeffs])

    def divmod(self, other: "UniPoly") -> tuple["UniPoly", "UniPoly"]:
        """Exact euclidean division over Q."""
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        d = other.degree()
        lc = other.leading()
        while len(rem) - 1 >= d and any(c != 0 for c in rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            f = rem[-1] / lc
            q[k] = f
            for i, c in enumerate(other.coeffs):
                rem[k + i] -= f * c
            rem.pop()
        return UniPoly(q), UniPoly(rem)

    def rem(self, other: "UniPoly") -> "UniPoly":
        return self.divmod(other)[1]

    def __repr__(self):
        return f"UniPoly({list(self.coeffs)})"


def uni_gcd(a: UniPoly, b: UniPoly) -> UniPoly:
    """Monic gcd over Q via the euclidean algorithm."""
    while not b.is_zero():
        r = a.rem(b)
        if not r.is_zero():
            # normalizing each remainder keeps coefficient growth in check
            r = r.monic()
        a, b = b, r
    if a.is_zero():
        return a
    return a.monic()


def squarefree_decomposition(p: UniPoly) -> list[tuple[UniPoly, int]]:
    """Yun decomposition: list of (monic square-free factor, multiplicity).

    The product of factor^multiplicity equals p up to a constant; factors are
    pairwise coprime and only factors with at least one term are returned.
    """
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.degree() == 0:
        return []
    g = uni_gcd(p, p.derivative())
    if g.degree() == 0:
        return [(p.monic(), 1)]
    out: list[tuple[UniPoly, int]] = []
    w, _ = p.divmod(g)
    y, _ = p.derivative().divmod(g)
    z = y - w.derivative()
    i = 1
    while True:
        if w.degree() == 0:
            break
        h = uni_gcd(w, z)
        if h.degree() > 0:
            out.append((h.monic(), i))
        w, _ = w.divmod(h)
        y, _ = z.divmod(h)
        z = y - w.derivative()
        i += 1
    return out


def squarefree_part(p: UniPoly) -> UniPoly:
    """Monic product of the distinct irreducible factors of p."""
    if p.is_zero():
        raise ValueError("zero polynomial")
    if p.degree() == 0:
        return UniPoly([1])
    g = uni_gcd(p, p.derivative())
    if g.degree() == 0:
        return p.monic()
    q, _ = p.divmod(g)
    return q.monic()


def restrict_to_line(f: Polynomial, e: Sequence, a: Sequence) -> UniPoly:
    """The univariate polynomial t -> f(t*e + a), computed exactly."""
    evec = [Fraction(x) for x in e]
    avec = [Fraction(x) for x in a]
    if len(evec) != f.nvars or len(avec) != f.nvars:
        raise ValueError("direction/offset length must equal nvars")
    d = max((sum(m) for m in f.terms), default=0)
    acc = [Fraction(0)] * (d + 1)
    for m, c in f.terms.items():
        term = [c]
        for i, k in enumerate(m):
            if k == 0:
                continue
            # binomial expansion of (e_i t + a_i)^k
            ei, ai = evec[i], avec[i]
            pw = [math.comb(k, j) * ei**j * ai ** (k - j) for j in range(k + 1)]
            new = [Fraction(0)] * (len(term) + k)
            for s, ts in enumerate(term):
                if ts:
                    for j, pj in enumerate(pw):
                        new[s + j] += ts * pj
            term = new
        for s, ts in enumerate(term):
            acc[s] += ts
    return UniPoly(acc)


# -- polynomial matrices (plain nested lists, row major) --------------------------


def _check_square(M: Sequence[Sequence[Polynomial]]) -> int:
    n = len(M)
    if n == 0 or any(len(row) != n for row in M):
        raise ValueError("matrix must be square and nonempty")
    return n


def _divexact(p: Polynomial, f: Polynomial) -> Polynomial:
    q = exact_divide(p, f)
    if q is None:
        raise ArithmeticError("inexact division in fraction-free elimination")
    return q


def poly_determinant(M: Sequence[Sequence[Polynomial]]) -> Polynomial:
    """Exact determinant of a square matrix of polynomials.

    Cofactor expansion for sizes up to 4, fraction-free Bareiss elimination
    above that (every division there is exact in the polynomial ring).
    """
    n = _check_square(M)
    nvars = M[0][0].nvars
    if n == 1:
        return M[0][0]
    if n <= 4:
        return _det_cofactor([list(row) for row in M])
    work = [list(row) for row in M]
    one = Polynomial.const(nvars, 1)
    prev = one
    sign = 1
    for k in range(n - 1):
        pivot_row = k
        while pivot_row < n and work[pivot_row][k].is_zero():
            pivot_row += 1
        if pivot_row == n:
            return Polynomial.zero(nvars)
        if pivot_row != k:
            work[pivot_row], work[k] = work[k], work[pivot_row]
            sign = -sign
        pivot = work[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = pivot * work[i][j] - work[i][k] * work[k][j]
                work[i][j] = _divexact(num, prev)
            work[i][k] = Polynomial.zero(nvars)
        prev = pivot
    det = work[n - 1][n - 1]
    return det if sign == 1 else -det


def _det_cofactor(M: list) -> Polynomial:
    n = len(M)
    nvars = M[0][0].nvars
    if n == 1:
        return M[0][0]
    if n == 2:
        return M[0][0] * M[1][1] - M[0][1] * M[1][0]
    acc = Polynomial.zero(nvars)
    for j in range(n):
        if M[0][j].is_zero():
            continue
        minor = [[M[i][jj] for jj in range(n) if jj != j] for i in range(1, n)]
        term = M[0][j] * _det_cofactor(minor)
        acc = acc + term if j % 2 == 0 else acc - term
    return acc


def poly_adjugate(M: Sequence[Sequence[Polynomial]]) -> list:
    """Adjugate matrix: transpose of signed maximal minors.

    Satisfies M * adj(M) = det(M) * I exactly; for a 1x1 matrix the empty
    minor convention gives [[1]].
    """
    n = _check_square(M)
    nvars = M[0][0].nvars
    if n == 1:
        return [[Polynomial.const(nvars, 1)]]
    adj = [[Polynomial.zero(nvars) for _ in range(n)] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            minor = [[M[r][c] for c in range(n) if c != i] for r in range(n) if r != j]
            d = poly_determinant(minor)
            adj[i][j] = d if (i + j) % 2 == 0 else -d
    return adj


def mat_mul(A: Sequence[Sequence[Polynomial]], B: Sequence[Sequence[Polynomial]]) -> list:
    n, m, k = len(A), len(B[0]), len(B)
    nvars = A[0][0].nvars
    out = [[Polynomial.zero(nvars) for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for j in range(m):
            acc = Polynomial.zero(nvars)
            for t in range(k):
                acc = acc + A[i][t] * B[t][j]
            out[i][j] = acc
    return out


# -- divisibility and square roots ---------------------------------------------


def exact_divide(p: Polynomial, f: Polynomial) -> Optional[Polynomial]:
    """Quotient q with p = q*f, or None when f does not divide p.

    Single-divisor long division under graded lex.  If f | p, every
    intermediate remainder stays divisible by f, so its leading term is
    divisible by the leading term of f; hence the first failed step is a
    sound certificate of non-divisibility.
    """
    if f.is_zero():
        raise ZeroDivisionError("division by zero polynomial")
    p._check_same_ring(f)
    nvars = p.nvars
    ltf_m, ltf_c = f.leading_term()
    q: dict[Mono, Fraction] = {}
    rem = p
    while not rem.is_zero():
        m, c = rem.leading_term()
        if not mono_divides(ltf_m, m):
            return None
        qm = tuple(x - y for x, y in zip(m, ltf_m))
        qc = c / ltf_c
        q[qm] = qc
        rem = rem - f * Polynomial.monomial(nvars, qm, qc)
    return Polynomial(nvars, q)


def _sqrt_fraction(c: Fraction) -> Optional[Fraction]:
    if c < 0:
        return None
    pn, pd = c.numerator, c.denominator
    rn, rd = math.isqrt(pn), math.isqrt(pd)
    if rn * rn != pn or rd * rd != pd:
        return None
    return Fraction(rn, rd)


def perfect_square_root(p: Polynomial) -> Optional[Polynomial]:
    """Polynomial r with r*r = p and positive leading coefficient, or None.

    Greedy term peeling under graded lex: the leading term of p must be the
    square of the root's leading term, and each following root term is
    (leading term of p - r^2) / (2 * leading term of r).  Any inexact step,
    or a step that fails to strictly decrease the order, disproves squareness.
    """
    if p.is_zero():
        return Polynomial.zero(p.nvars)
    nvars = p.nvars
    lt_m, lt_c = p.leading_term()
    if any(e % 2 for e in lt_m):
        return None
    c0 = _sqrt_fraction(lt_c)
    if c0 is None or c0 == 0:
        return None
    lead_m = tuple(e // 2 for e in lt_m)
    r = Polynomial.monomial(nvars, lead_m, c0)
    rem = p - r * r
    last_key = grlex_key(lead_m)
    while not rem.is_zero():
        m, c = rem.leading_term()
        if not mono_divides(lead_m, m):
            return None
        tm = tuple(x - y for x, y in zip(m, lead_m))
        key = grlex_key(tm)
        if key >= last_key:
            return None
        last_key = key
        t = Polynomial.monomial(nvars, tm, c / (2 * c0))
        # rem for r+t is rem - 2*t*r - t^2
        rem = rem - (2 * t) * r - t * t
        r = r + t
    return r


# -- parsing and formatting ----------------------------------------------------


class PolyParseError(ValueError):
    """Syntax or name error while parsing polynomial text; carries a position."""

    def __init__(self, message: str, pos: int):
        super().__init__(f"{message} (at position {pos})")
        self.pos = pos


_TOKEN_OPS = set("+-*/^()")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    toks: list[tuple[str, str, int]] = []
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch.isspace():
            i += 1
            continue
        if ch in _TOKEN_OPS:
            toks.append(("op", ch, i))
            i += 1
            continue
        if ch.isdigit():
            j = i
            while j < n and text[j].isdigit():
                j += 1
            toks.append(("num", text[i:j], i))
            i = j
            continue
        if ch.isalpha() or ch == "_":
            j = i
            while j < n and (text[j].isalnum() or text[j] == "_"):
                j += 1
            toks.append(("name", text[i:j], i))
            i = j
            continue
        raise PolyParseError(f"unexpected character {ch!r}", i)
    toks.append(("end", "", n))
    return toks


class _Parser:
    def __init__(self, text: str, variables: Sequence[str]):
        self.toks = _tokenize(text)
        self.k = 0
        self.names = {name: i for i, name in enumerate(variables)}
        self.nvars = len(variables)

    def peek(self):
        return self.toks[self.k]

    def next(self):
        t = self.toks[self.k]
        self.k += 1
        return t

    def expect_op(self, op: str):
        kind, val, pos = self.next()
        if kind != "op" or val != op:
            raise PolyParseError(f"expected {op!r}", pos)

    def parse(self) -> Polynomial:
        p = self.expr()
        kind, val, pos = self.peek()
        if kind != "end":
            raise PolyParseError(f"unexpected token {val!r}", pos)
        return p

    def expr(self) -> Polynomial:
        p = self.term()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                q = self.term()
                p = p + q if val == "+" else p - q
            else:
                return p

    def term(self) -> Polynomial:
        p = self.factor()
        while True:
            kind, val, pos = self.peek()
            if kind == "op" and val == "*":
                self.next()
                p = p * self.factor()
            elif kind == "op" and val == "/":
                self.next()
                q = self.factor()
                if q.total_degree() > 0:
                    raise PolyParseError("divisor must be a nonzero constant", pos)
                c = q.coefficient((0,) * self.nvars)
                if c == 0:
                    raise PolyParseError("division by zero", pos)
                p = p * (Fraction(1) / c)
            else:
                return p

    def factor(self) -> Polynomial:
        base = self.base()
        kind, val, pos = self.peek()
        if kind == "op" and val == "^":
            self.next()
            kind, val, pos = self.next()
            if kind != "num":
                raise PolyParseError("exponent must be a nonnegative integer", pos)
            return base ** int(val)
        return base

    def base(self) -> Polynomial:
        kind, val, pos = self.next()
        if kind == "num":
            return Polynomial.const(self.nvars, int(val))
        if kind == "name":
            if val not in self.names:
                raise PolyParseError(f"unknown variable {val!r}", pos)
            return Polynomial.variable(self.nvars, self.names[val])
        if kind == "op" and val == "(":
            p = self.expr()
            self.expect_op(")")
            return p
        if kind == "op" and val == "-":
            return -self.factor()
        if kind == "op" and val == "+":
            return self.factor()
        raise PolyParseError(f"unexpected token {val!r}", pos)


def parse_poly(text: str, variables: Sequence[str]) -> Polynomial:
    """Parse polynomial text over named variables.

    Grammar: + - * ^ and parentheses; rational literals p/q; implicit
    multiplication is a syntax error; whitespace is insignificant.
    """
    if len(set(variables)) != len(variables):
        raise ValueError("duplicate variable names")
    return _Parser(text, variables).parse()


def _format_coeff(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def format_poly(f: Polynomial, variables: Sequence[str]) -> str:
    """Canonical text: graded-lex descending, signs folded into coefficients."""
    if len(variables) != f.nvars:
        raise ValueError("variable name count must equal nvars")
    if f.is_zero():
        return "0"
    parts: list[str] = []
    for m, c in f.sorted_terms():
        factors = []
        for name, e in zip(variables, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        mag = abs(c)
        if factors and mag == 1:
            body = "*".join(factors)
        elif factors:
            body = "*".join([_format_coeff(mag)] + factors)
        else:
            body = _format_coeff(mag)
        if not parts:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f" + {body}" if c > 0 else f" - {body}")
    return "".join(parts)


def default_names(nvars: int) -> list[str]:
    """x,y,z for up to three variables; x1..xn otherwise."""
    if nvars <= 3:
        return ["x", "y", "z"][:nvars]
    return [f"x{i+1}" for i in range(nvars)]
