"""Truncated power series over Q and generating functions of merged graphs."""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from .growth import PartitionSpec, predicted_orbit_count
from .polynomial import IntPolynomial


class SeriesError(ArithmeticError):
    pass


class TruncatedSeries:
    """c₀ + c₁u + ... + c_M u^M with exact rational coefficients, modulo u^(M+1)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable, degree: Optional[int] = None):
        c = [Fraction(x) for x in coeffs]
        if degree is None:
            degree = len(c) - 1
        if degree < 0:
            raise ValueError("truncation degree must be >= 0")
        c = (c + [Fraction(0)] * (degree + 1))[: degree + 1]
        self.coeffs = tuple(c)

    @classmethod
    def geometric(cls, degree: int, start: int = 1) -> "TruncatedSeries":
        """u^start + u^(start+1) + ... up to the truncation degree."""
        return cls([0] * start + [1] * (degree + 1 - start), degree)

    @classmethod
    def from_polynomial(cls, p: IntPolynomial, degree: int) -> "TruncatedSeries":
        return cls(p.c, degree)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, k: int) -> Fraction:
        return self.coeffs[k]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __eq__(self, other) -> bool:
        return isinstance(other, TruncatedSeries) and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"TruncatedSeries({[str(c) for c in self.coeffs]})"

    def _check(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([other], self.degree)
        if other.degree != self.degree:
            raise SeriesError("truncation degrees differ")
        return other

    def __add__(self, other) -> "TruncatedSeries":
        other = self._check(other)
        return TruncatedSeries([a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        return TruncatedSeries([-a for a in self.coeffs])

    def __sub__(self, other) -> "TruncatedSeries":
        return self + (-self._check(other))

    def __rsub__(self, other) -> "TruncatedSeries":
        return (-self) + other

    def __mul__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([a * other for a in self.coeffs])
        other = self._check(other)
        m = self.degree
        a, b = self.coeffs, other.coeffs
        out = [Fraction(0)] * (m + 1)
        for i, x in enumerate(a):
            if x:
                for j in range(m + 1 - i):
                    if b[j]:
                        out[i + j] += x * b[j]
        return TruncatedSeries(out)

    __rmul__ = __mul__

    def __truediv__(self, other) -> "TruncatedSeries":
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries([a / other for a in self.coeffs])
        other = self._check(other)
        b = other.coeffs
        if b[0] == 0:
            raise SeriesError("divisor has zero constant term")
        out = []
        for k, a in enumerate(self.coeffs):
            acc = a - sum(out[j] * b[k - j] for j in range(max(0, k - len(b) + 1), k))
            out.append(acc / b[0])
        return TruncatedSeries(out)

    def __rtruediv__(self, other) -> "TruncatedSeries":
        return TruncatedSeries([other], self.degree) / self

    def derivative(self) -> "TruncatedSeries":
        """d/du, with the top coefficient lost to truncation set to zero."""
        return TruncatedSeries([k * c for k, c in enumerate(self.coeffs)][1:] + [0])

    def shift(self) -> "TruncatedSeries":
        """Multiply by u."""
        return TruncatedSeries([0] + list(self.coeffs[:-1]))

    def log_derivative(self) -> "TruncatedSeries":
        """u·f'/f."""
        return self.derivative().shift() / self

    def __call__(self, x: float) -> float:
        acc = 0.0
        for c in reversed(self.coeffs):
            acc = acc * x + float(c)
        return acc


def add(f, g):
    return f + g


def mul(f, g):
    return f * g


def div(f, g):
    return f / g


def genfun_from_counts(counts: Sequence[int]) -> TruncatedSeries:
    """Σ_{m>=1} N(m) u^m from N(1), N(2), ..., truncated at len(counts)."""
    return TruncatedSeries([0] + [int(c) for c in counts])


def merge_genfun(fx: TruncatedSeries, fy: TruncatedSeries) -> TruncatedSeries:
    """(F_X + F_Y + 2·F_X·F_Y) / (1 - F_X·F_Y)."""
    if fx[0] != 0 or fy[0] != 0:
        raise SeriesError("generating functions must have zero constant term")
    prod = fx * fy
    return (fx + fy + 2 * prod) / (1 - prod)


def alternating_block_sum(nx: Sequence[int], ny: Sequence[int], m: int) -> int:
    """Coefficient of u^m summed directly over alternating block compositions.

    ``nx[k-1]`` is N_X(k).  Sums N_X(k₁)N_Y(k₂)N_X(k₃)... and the same starting
    with Y, over all compositions k₁ + ... + k_r = m.
    """
    # ends[side][n]: weighted count of alternating sequences of total n ending on side
    ends = [[0] * (m + 1), [0] * (m + 1)]
    tables = (nx, ny)
    for n in range(1, m + 1):
        for side in (0, 1):
            tab = tables[side]
            total = tab[n - 1] if n - 1 < len(tab) else 0
            for k in range(1, n):
                if k - 1 < len(tab) and tab[k - 1]:
                    total += tab[k - 1] * ends[1 - side][n - k]
            ends[side][n] = total
    return ends[0][m] + ends[1][m]


def partition_series(q: int, partition: PartitionSpec, degree: int,
                     form: str = "orbit") -> TruncatedSeries:
    """Generating function attached to a ray construction.

    ``orbit``: Σ_d S_d(x₀) u^d with S_{2n}(x₀) = (q-1)q^(s_n - 1)[n ∈ I], the
    distance-graded return counts.  ``weight``: Σ_m q^(s_m) u^m.
    """
    coeffs = [0] * (degree + 1)
    if form == "orbit":
        for n in range(1, degree // 2 + 1):
            coeffs[2 * n] = predicted_orbit_count(q, partition, n)
    elif form == "weight":
        s = partition.partial_sums(degree)
        for m in range(1, degree + 1):
            coeffs[m] = q ** s[m]
    else:
        raise ValueError(f"unknown series form {form!r}")
    return TruncatedSeries(coeffs)


@dataclass(frozen=True)
class UnitProductRoot:
    """Root u* of F_X(u)·F_Y(u) = 1 for the truncated series.

    Dropped tail terms only make the product smaller, so the true root is at
    most ``u``; ``delta_lower`` = -log u is therefore a lower bound on the
    candidate exponent.
    """

    u: float
    bracket: tuple
    delta_lower: float
    tail_term: float
    degree: int
    label: str = "CANDIDATE"


class NoRoot(SeriesError):
    pass


def solve_unit_product(fx: TruncatedSeries, fy: TruncatedSeries, tol: float = 1e-12,
                       u_max: float = 1.0) -> UnitProductRoot:
    """Smallest u in (0, u_max] with F_X(u)·F_Y(u) = 1, by monotone bisection."""
    coeff = list(fx.coeffs) + list(fy.coeffs)
    if any(c < 0 for c in coeff):
        raise SeriesError("coefficients must be non-negative")

    def product(u):
        return fx(u) * fy(u)

    if not any(fx.coeffs) or not any(fy.coeffs) or product(u_max) < 1:
        raise NoRoot("truncated product stays below 1 on the scanned interval")
    lo, hi = 0.0, u_max
    while hi - lo > tol:
        mid = (lo + hi) / 2
        if product(mid) < 1:
            lo = mid
        else:
            hi = mid
    u = (lo + hi) / 2
    m = fx.degree
    tail = float(fx[m]) * u ** m * fy(u) + float(fy[m]) * u ** m * fx(u)
    return UnitProductRoot(u, (lo, hi), -math.log(u), tail, m)
