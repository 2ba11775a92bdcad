"""Truncated formal q-series with rational exponents and integer
coefficients.

A :class:`QSeries` stores a finite table exponent -> coefficient together
with an inclusive truncation bound N; every exponent is a nonnegative
rational <= N and zero coefficients are never stored.  Since all exponents
are nonnegative, the truncated product of truncated series is exact up to N.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .errors import InputError


@dataclass(frozen=True)
class QSeries:
    terms: tuple[tuple[Fraction, int], ...]  # sorted by exponent
    bound: Fraction

    @staticmethod
    def from_dict(coeffs: dict[Fraction, int], bound) -> "QSeries":
        bound = Fraction(bound)
        items = []
        for e, c in coeffs.items():
            e = Fraction(e)
            if c == 0 or e > bound:
                continue
            if e < 0:
                raise InputError("negative exponent in q-series")
            items.append((e, c))
        items.sort()
        return QSeries(tuple(items), bound)

    @staticmethod
    def one(bound) -> "QSeries":
        return QSeries(((Fraction(0), 1),), Fraction(bound))

    @staticmethod
    def zero(bound) -> "QSeries":
        return QSeries((), Fraction(bound))

    def coefficient(self, exponent) -> int:
        exponent = Fraction(exponent)
        for e, c in self.terms:
            if e == exponent:
                return c
        return 0

    def __add__(self, other: "QSeries") -> "QSeries":
        bound = min(self.bound, other.bound)
        acc: dict[Fraction, int] = {}
        for e, c in self.terms + other.terms:
            acc[e] = acc.get(e, 0) + c
        return QSeries.from_dict(acc, bound)

    def __mul__(self, other: "QSeries") -> "QSeries":
        bound = min(self.bound, other.bound)
        acc: dict[Fraction, int] = {}
        for e1, c1 in self.terms:
            if e1 > bound:
                continue
            for e2, c2 in other.terms:
                e = e1 + e2
                if e > bound:
                    break
                acc[e] = acc.get(e, 0) + c1 * c2
        return QSeries.from_dict(acc, bound)

    def has_integer_exponents(self) -> bool:
        return all(e.denominator == 1 for e, _ in self.terms)

    def first_difference(self, other: "QSeries") -> Fraction | None:
        """Smallest exponent (up to the common bound) where the two series
        have different coefficients, or None if they agree."""
        bound = min(self.bound, other.bound)
        mine = {e: c for e, c in self.terms if e <= bound}
        theirs = {e: c for e, c in other.terms if e <= bound}
        diff = [e for e in set(mine) | set(theirs)
                if mine.get(e, 0) != theirs.get(e, 0)]
        return min(diff) if diff else None

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
            elif e == 1:
                parts.append(f"{c}*q")
            else:
                parts.append(f"{c}*q^{e}")
        return " + ".join(parts)


def psi_series(alpha, w: int, bound) -> QSeries:
    """The translated one-dimensional theta sum q^{w(n+alpha)^2} over all
    integers n, truncated at exponents <= bound.

    The coefficient at exponent x counts the integers n with
    w(n+alpha)^2 = x.
    """
    if w < 1:
        raise InputError("weight w must be a positive integer")
    alpha = Fraction(alpha)
    bound = Fraction(bound)
    if bound < 0:
        raise InputError("truncation bound must be nonnegative")
    # (n + alpha)^2 <= bound / w, solved exactly over the integers
    a, b = alpha.numerator, alpha.denominator
    p, q = (bound / w).numerator, (bound / w).denominator
    s = isqrt(p * b * b // q) + 1
    lo = -(s + a) // b - 1
    hi = (s - a) // b + 1
    acc: dict[Fraction, int] = {}
    for n in range(lo, hi + 1):
        e = w * (n + alpha) ** 2
        if e <= bound:
            acc[e] = acc.get(e, 0) + 1
    return QSeries.from_dict(acc, bound)
