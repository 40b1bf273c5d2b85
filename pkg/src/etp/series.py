"""Truncated formal power series in t with polynomial coefficients.

A series of order N stores the plain coefficients of 1, t, ..., t^N; nothing
beyond t^N is represented. Coefficients are `MultiPoly` values, so the same
machinery covers numeric series and generating functions of polynomial
families. Exponential-generating-function normalization happens only at
extraction time, through `coeff_egf`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union

from .algebra import ONE, ZERO, MultiPoly, Scalar

CoeffLike = Union[MultiPoly, Scalar]


@dataclass(frozen=True)
class TruncSeries:
    """Coefficients of t^0 .. t^order; equality is exact coefficient equality."""

    coeffs: tuple[MultiPoly, ...]

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("a truncated series needs at least the t^0 coefficient")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @staticmethod
    def from_coeffs(values: Iterable[CoeffLike]) -> TruncSeries:
        """Build a series, coercing ints and Fractions to constant polynomials."""
        out: list[MultiPoly] = []
        for value in values:
            out.append(value if isinstance(value, MultiPoly) else MultiPoly.const(value))
        return TruncSeries(tuple(out))


def monomial_series(coef: Scalar, power: int, order: int) -> TruncSeries:
    """The single-term series coef * t^power, truncated at the given order."""
    if order < 0 or power < 0:
        raise ValueError("monomial_series needs power >= 0 and order >= 0")
    coeffs = [ZERO] * (order + 1)
    if power <= order:
        coeffs[power] = MultiPoly.const(coef)
    return TruncSeries(tuple(coeffs))


def exp_series(u: CoeffLike, order: int) -> TruncSeries:
    """exp(u*t) truncated: the t^n coefficient is u^n / n!."""
    if order < 0:
        raise ValueError(f"series order must be >= 0, got {order}")
    base = u if isinstance(u, MultiPoly) else MultiPoly.const(u)
    coeffs = [ONE]
    for n in range(1, order + 1):
        coeffs.append(coeffs[-1] * base * Fraction(1, n))
    return TruncSeries(tuple(coeffs))


def truncated_exp_tail(m: int, order: int) -> TruncSeries:
    """The series e^t + 1 - sum_{j<m} t^j/j!, truncated.

    Its t^j coefficient is 1/j! for j >= m and 0 for 0 < j < m; the constant
    term is 2 when m = 0 and 1 otherwise.
    """
    if m < 0:
        raise ValueError(f"m must be >= 0, got {m}")
    if order < 0:
        raise ValueError(f"series order must be >= 0, got {order}")
    coeffs = [MultiPoly.const(2 if m == 0 else 1)]
    for j in range(1, order + 1):
        if j < m:
            coeffs.append(ZERO)
        else:
            coeffs.append(MultiPoly.const(Fraction(1, math.factorial(j))))
    return TruncSeries(tuple(coeffs))


def series_mul(a: TruncSeries, b: TruncSeries) -> TruncSeries:
    """Cauchy product of two series of the same order."""
    if a.order != b.order:
        raise ValueError(f"order mismatch: {a.order} != {b.order}")
    coeffs = []
    for n in range(a.order + 1):
        acc = ZERO
        for k in range(n + 1):
            acc = acc + a.coeffs[k] * b.coeffs[n - k]
        coeffs.append(acc)
    return TruncSeries(tuple(coeffs))


def series_inverse(a: TruncSeries) -> TruncSeries:
    """Multiplicative inverse of a series whose constant term is a nonzero rational.

    Solves the triangular system b_0 = 1/a_0,
    b_n = -(1/a_0) * sum_{k=1..n} a_k b_{n-k}.
    """
    head = a.coeffs[0]
    if not head.is_constant() or head.is_zero():
        raise ValueError("series inversion needs a nonzero constant leading coefficient")
    inv_head = Fraction(1) / head.constant_value()
    coeffs = [MultiPoly.const(inv_head)]
    for n in range(1, a.order + 1):
        acc = ZERO
        for k in range(1, n + 1):
            acc = acc + a.coeffs[k] * coeffs[n - k]
        coeffs.append(acc * -inv_head)
    return TruncSeries(tuple(coeffs))


def series_truncate(a: TruncSeries, order: int) -> TruncSeries:
    """Drop coefficients above the given (not larger) order."""
    if order < 0 or order > a.order:
        raise ValueError(f"cannot truncate order-{a.order} series to order {order}")
    return TruncSeries(a.coeffs[: order + 1])


def coeff_egf(a: TruncSeries, n: int) -> MultiPoly:
    """The exponential-generating-function coefficient n! * [t^n]."""
    if n < 0 or n > a.order:
        raise ValueError(f"coefficient index {n} outside stored range 0..{a.order}")
    return a.coeffs[n] * math.factorial(n)
