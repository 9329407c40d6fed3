"""Exact integer polynomials, fraction-free determinants and real root isolation."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from math import gcd, lcm
from typing import Iterable, Optional, Sequence, Union

Number = Union[int, Fraction]


class IntPolynomial:
    """Polynomial with integer coefficients, stored in ascending degree."""

    __slots__ = ("c",)

    def __init__(self, coeffs: Iterable[int] = ()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.c = tuple(c)

    @classmethod
    def constant(cls, a: int) -> "IntPolynomial":
        return cls((a,))

    @classmethod
    def monomial(cls, a: int, k: int) -> "IntPolynomial":
        return cls([0] * k + [a])

    # -- basic structure --------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; the zero polynomial has degree -1."""
        return len(self.c) - 1

    @property
    def coefficients(self) -> list:
        return list(self.c)

    @property
    def is_zero(self) -> bool:
        return not self.c

    @property
    def lead(self) -> int:
        return self.c[-1] if self.c else 0

    def __bool__(self) -> bool:
        return bool(self.c)

    def __eq__(self, other) -> bool:
        if isinstance(other, int):
            other = IntPolynomial((other,))
        return isinstance(other, IntPolynomial) and self.c == other.c

    def __hash__(self) -> int:
        return hash(self.c)

    def __repr__(self) -> str:
        return f"IntPolynomial({list(self.c)})"

    def __str__(self) -> str:
        if not self.c:
            return "0"
        terms = []
        for k, a in enumerate(self.c):
            if a == 0:
                continue
            mono = "" if k == 0 else ("u" if k == 1 else f"u^{k}")
            if mono and abs(a) == 1:
                body = mono
            else:
                body = f"{abs(a)}{'*' if mono else ''}{mono}"
            terms.append(("-" if a < 0 else "+", body))
        sign, first = terms[0]
        out = ("-" if sign == "-" else "") + first
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    # -- arithmetic -------------------------------------------------------

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(-a for a in self.c)

    def __add__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            other = IntPolynomial((other,))
        a, b = self.c, other.c
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for k, x in enumerate(b):
            out[k] += x
        return IntPolynomial(out)

    __radd__ = __add__

    def __sub__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            other = IntPolynomial((other,))
        return self + (-other)

    def __rsub__(self, other) -> "IntPolynomial":
        return (-self) + other

    def __mul__(self, other) -> "IntPolynomial":
        if isinstance(other, int):
            return IntPolynomial(a * other for a in self.c)
        a, b = self.c, other.c
        if not a or not b:
            return ZERO
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    out[i + j] += x * y
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "IntPolynomial":
        if n < 0:
            raise ValueError("negative power")
        result, base = ONE, self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, d: "IntPolynomial") -> "IntPolynomial":
        """Quotient in Z[u]; raises ``ArithmeticError`` unless ``d`` divides exactly."""
        if d.is_zero:
            raise ZeroDivisionError("division by the zero polynomial")
        if d.c == (1,):
            return self
        if d.c == (-1,):
            return -self
        a = list(self.c)
        db = d.degree
        if len(a) - 1 < db:
            if any(a):
                raise ArithmeticError("inexact polynomial division")
            return ZERO
        dc = d.c
        lead = dc[-1]
        q = [0] * (len(a) - db)
        for k in range(len(a) - 1 - db, -1, -1):
            top = a[k + db]
            if not top:
                continue
            coef, rem = divmod(top, lead)
            if rem:
                raise ArithmeticError("inexact polynomial division")
            q[k] = coef
            for j, y in enumerate(dc):
                if y:
                    a[k + j] -= coef * y
        if any(a[:db]):
            raise ArithmeticError("inexact polynomial division")
        return IntPolynomial(q)

    def divides(self, other: "IntPolynomial") -> bool:
        try:
            other.exact_div(self)
        except ArithmeticError:
            return False
        return True

    def __call__(self, x):
        acc = 0
        for a in reversed(self.c):
            acc = acc * x + a
        return acc

    def derivative(self) -> "IntPolynomial":
        return IntPolynomial(k * a for k, a in enumerate(self.c) if k)

    def reversed(self, n: Optional[int] = None) -> "IntPolynomial":
        """u^n p(1/u); ``n`` defaults to the degree."""
        n = self.degree if n is None else n
        if n < self.degree:
            raise ValueError("reversal degree below polynomial degree")
        return IntPolynomial(list(reversed(self.c + (0,) * (n - self.degree))))

    def content(self) -> int:
        return reduce(gcd, self.c, 0)

    def primitive(self) -> "IntPolynomial":
        """Divide by the content; the sign of the leading coefficient is kept."""
        g = self.content()
        return self if g in (0, 1) else IntPolynomial(a // g for a in self.c)

    def multiplicity(self, root: "IntPolynomial") -> tuple:
        """Largest k with root**k dividing self, and the cofactor."""
        k, rest = 0, self
        while rest and root.divides(rest):
            rest = rest.exact_div(root)
            k += 1
        return k, rest


ZERO = IntPolynomial()
ONE = IntPolynomial((1,))
U = IntPolynomial((0, 1))


# -- polynomial matrices ---------------------------------------------------

def bareiss_det(matrix: Sequence[Sequence[IntPolynomial]]) -> IntPolynomial:
    """Determinant over Z[u] by fraction-free (Bareiss) elimination.

    Every intermediate division is exact, so all entries stay in Z[u].
    """
    n = len(matrix)
    if n == 0:
        return ONE
    a = [list(row) for row in matrix]
    if any(len(row) != n for row in a):
        raise ValueError("matrix is not square")
    sign = 1
    prev = ONE
    for k in range(n - 1):
        if a[k][k].is_zero:
            for i in range(k + 1, n):
                if not a[i][k].is_zero:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return ZERO
        akk = a[k][k]
        rowk = a[k]
        for i in range(k + 1, n):
            rowi = a[i]
            aik = rowi[k]
            for j in range(k + 1, n):
                if aik.is_zero:
                    num = akk * rowi[j]
                else:
                    num = akk * rowi[j] - aik * rowk[j]
                rowi[j] = num.exact_div(prev)
            rowi[k] = ZERO
        prev = akk
    det = a[n - 1][n - 1]
    return -det if sign < 0 else det


def bareiss_det_int(matrix: Sequence[Sequence[int]]) -> int:
    """Integer determinant by the same fraction-free scheme."""
    n = len(matrix)
    if n == 0:
        return 1
    a = [list(map(int, row)) for row in matrix]
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        akk = a[k][k]
        for i in range(k + 1, n):
            aik = a[i][k]
            for j in range(k + 1, n):
                a[i][j] = (akk * a[i][j] - aik * a[k][j]) // prev
        prev = akk
    return sign * a[n - 1][n - 1]


# -- rational polynomial helpers (Sturm chains) ------------------------------

def _to_primitive_int(coeffs: Sequence[Fraction]) -> IntPolynomial:
    """Positive rational multiple of ``coeffs`` with coprime integer entries."""
    den = reduce(lcm, (Fraction(x).denominator for x in coeffs), 1)
    return IntPolynomial(int(Fraction(x) * den) for x in coeffs).primitive()


def _divmod_q(a: IntPolynomial, b: IntPolynomial):
    r = [Fraction(x) for x in a.c]
    bd, blead = b.degree, b.lead
    q = [Fraction(0)] * max(len(r) - bd, 0)
    for k in range(len(r) - 1 - bd, -1, -1):
        coef = r[k + bd] / blead
        q[k] = coef
        if coef:
            for j, y in enumerate(b.c):
                r[k + j] -= coef * y
    r = r[:bd] if bd > 0 else []
    return q, r


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive gcd over Q, normalized to a positive leading coefficient."""
    a, b = a.primitive(), b.primitive()
    while b:
        _, r = _divmod_q(a, b)
        a, b = b, _to_primitive_int(r) if any(r) else ZERO
    if a.lead < 0:
        a = -a
    return a


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    g = poly_gcd(p, p.derivative())
    if g.degree <= 0:
        return p.primitive()
    q, r = _divmod_q(p, g)
    assert not any(r)
    return _to_primitive_int(q)


def sturm_sequence(p: IntPolynomial) -> list:
    """Sturm chain of ``p``, each member scaled to a primitive integer polynomial."""
    chain = [p.primitive(), p.derivative().primitive()]
    while chain[-1].degree > 0:
        _, r = _divmod_q(chain[-2], chain[-1])
        if not any(r):
            break
        chain.append(-_to_primitive_int(r))
    return chain


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def sign_variations(chain: Sequence[IntPolynomial], x: Number) -> int:
    signs = [s for s in (_sign(p(x)) for p in chain) if s]
    return sum(1 for s, t in zip(signs, signs[1:]) if s != t)


def count_roots(chain, a: Number, b: Number) -> int:
    """Distinct real roots in (a, b] of the chain's head; ``a`` must not be a root."""
    return sign_variations(chain, a) - sign_variations(chain, b)


def cauchy_bound(p: IntPolynomial) -> Fraction:
    lead = abs(p.lead)
    return 1 + Fraction(max(abs(a) for a in p.c[:-1]), lead) if p.degree > 0 else Fraction(1)


@dataclass(frozen=True)
class RootInterval:
    """Interval (lo, hi] holding exactly one root; ``lo == hi`` for an exact root."""

    lo: Fraction
    hi: Fraction

    @property
    def exact(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    @property
    def value(self) -> float:
        return float((self.lo + self.hi) / 2)

    def as_strings(self) -> list:
        return [str(self.lo), str(self.hi)]


def isolate_smallest_positive_root(
    p: IntPolynomial, tol: Fraction = Fraction(1, 10 ** 12)
) -> Optional[RootInterval]:
    """Isolate and refine the smallest positive real root of ``p``.

    Sturm counts do the isolation; afterwards rational bisection on exact
    signs narrows the interval to width ``tol``.  Returns None when ``p`` has
    no positive root.
    """
    if p.is_zero:
        raise ValueError("zero polynomial")
    # strip roots at zero
    k = 0
    while k < len(p.c) and p.c[k] == 0:
        k += 1
    f = squarefree_part(IntPolynomial(p.c[k:]))
    if f.degree <= 0:
        return None
    chain = sturm_sequence(f)
    lo, hi = Fraction(0), cauchy_bound(f)
    if count_roots(chain, lo, hi) == 0:
        return None
    while True:
        n = count_roots(chain, lo, hi)
        if n == 1:
            break
        mid = (lo + hi) / 2
        inner = count_roots(chain, lo, mid)
        if inner >= 1:
            if f(mid) == 0 and inner == 1:
                return RootInterval(mid, mid)
            hi = mid
        else:
            lo = mid
    if f(hi) == 0:
        return RootInterval(hi, hi)
    s_lo = _sign(f(lo)) if lo else _sign(f.c[0])
    while hi - lo > tol:
        mid = (lo + hi) / 2
        s = _sign(f(mid))
        if s == 0:
            return RootInterval(mid, mid)
        if s == s_lo:
            lo = mid
        else:
            hi = mid
    return RootInterval(lo, hi)
