"""Polynomial family constructors.

Each family is produced by two independent routes wherever possible: the
truncated Euler polynomials have both a triangular recurrence and a series
division pipeline (`truncated_euler_poly` vs `truncated_euler_poly_oracle`),
and the remaining families are built from their generating functions.
Values are exact `MultiPoly` objects in x; arguments other than x are
obtained by substitution at use sites.

Computed prefixes are memoized per family under a lock. The recurrence and
the oracle never share cached values, so a disagreement between them is
always visible to `oracle-diff`.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable

from .algebra import X, ZERO, MultiPoly, Rational, Scalar, binomial
from .series import (
    TruncSeries,
    coeff_egf,
    exp_series,
    monomial_series,
    series_inverse,
    series_mul,
    truncated_exp_tail,
)


class FamilyKind(Enum):
    """Families the engine can construct; values double as CLI names."""

    TRUNCATED_EULER = "truncated-euler"
    TRUNCATED_EULER_NUMBER = "truncated-euler-number"
    HYPERGEOM_BERNOULLI = "hypergeom-bernoulli"
    CLASSICAL_BERNOULLI = "bernoulli"
    CLASSICAL_EULER = "euler"
    FROBENIUS_EULER = "frobenius-euler"


@dataclass(frozen=True)
class FamilySpec:
    """Hashable identity of one polynomial family (kind plus parameters)."""

    kind: FamilyKind
    m: int = 0
    r: int = 0
    lam: Rational | None = None

    def __post_init__(self) -> None:
        if self.m < 0 or self.r < 0:
            raise ValueError("family indices must be non-negative")
        if self.kind is FamilyKind.FROBENIUS_EULER:
            if self.lam is None:
                raise ValueError("frobenius-euler needs a lambda parameter")
            lam = Fraction(self.lam)
            if lam == 1:
                raise ValueError("frobenius-euler needs lambda != 1")
            object.__setattr__(self, "lam", lam)


class PolyCache:
    """Monotone per-family memo: the prefix list for a family only grows.

    Extension runs under a lock, so concurrent callers see either the old
    complete prefix or the new one, never a half-written row.
    """

    def __init__(self) -> None:
        self._lock = threading.RLock()
        self._polys: dict[FamilySpec, list[MultiPoly]] = {}

    def prefix(
        self,
        spec: FamilySpec,
        n: int,
        extend: Callable[[list[MultiPoly], int], None],
    ) -> list[MultiPoly]:
        """Entries 0..n for the family, growing the stored prefix if needed."""
        with self._lock:
            entries = self._polys.setdefault(spec, [])
            if len(entries) <= n:
                extend(entries, n)
            return entries[: n + 1]

    def clear(self) -> None:
        with self._lock:
            self._polys.clear()


_CACHE = PolyCache()


def clear_caches() -> None:
    """Forget all memoized family prefixes (mainly for tests)."""
    _CACHE.clear()


def _check_indices(m: int, n: int) -> None:
    if m < 0 or n < 0:
        raise ValueError(f"family indices must be non-negative, got m={m}, n={n}")


def truncated_euler_poly(m: int, n: int) -> MultiPoly:
    """Truncated Euler polynomial of order m, degree index n, via recurrence.

    The family vanishes for n < m; above that it satisfies
    E(m, k) = 2*C(k, k-m)*x^(k-m) - sum_{j=0..k-m} C(k, j) * E(m, j).
    For m = 0 the top term of the sum is the value itself and the recurrence
    is solved for it.
    """
    _check_indices(m, n)
    spec = FamilySpec(FamilyKind.TRUNCATED_EULER, m=m)

    def extend(entries: list[MultiPoly], upto: int) -> None:
        while len(entries) <= upto:
            k = len(entries)
            if k < m:
                entries.append(ZERO)
                continue
            i = k - m
            if m > 0:
                acc = 2 * binomial(k, i) * X**i
                for j in range(i + 1):
                    acc = acc - binomial(k, j) * entries[j]
            else:
                acc = X**k
                for j in range(k):
                    acc = acc - Fraction(binomial(k, j), 2) * entries[j]
            entries.append(acc)

    return _CACHE.prefix(spec, n, extend)[n]


def truncated_euler_poly_oracle(m: int, n: int) -> MultiPoly:
    """The same polynomial from its generating function, independently.

    Builds (2 t^m / m!) e^{xt} and e^t + 1 - sum_{j<m} t^j/j! to order n,
    inverts the denominator, multiplies, and reads off the n-th EGF
    coefficient. Deliberately uncached and free of any recurrence.
    """
    _check_indices(m, n)
    numerator = series_mul(
        monomial_series(Fraction(2, math.factorial(m)), m, n),
        exp_series(X, n),
    )
    quotient = series_mul(numerator, series_inverse(truncated_exp_tail(m, n)))
    return coeff_egf(quotient, n)


def truncated_euler_number(m: int, n: int) -> Fraction:
    """The constant term of the truncated Euler polynomial (its value at 0)."""
    return truncated_euler_poly(m, n).eval_at(0)


def closed_form_m1(n: int) -> MultiPoly:
    """The order-1 closed form 2n(x-1)^(n-1); defined for n >= 1 only."""
    if n < 1:
        raise ValueError(f"the closed form needs n >= 1, got {n}")
    return 2 * n * (X - 1) ** (n - 1)


def hypergeom_bernoulli_poly(m: int, n: int) -> MultiPoly:
    """Hypergeometric Bernoulli polynomial of order m, via series division.

    The generating function is (t^m/m!) e^{xt} / (e^t - sum_{j<m} t^j/j!).
    Numerator and denominator share an exact factor t^m/m! which is cancelled
    before inversion, leaving e^{xt} divided by the unit-constant series with
    t^k coefficient m!/(k+m)!.
    """
    _check_indices(m, n)
    spec = FamilySpec(FamilyKind.HYPERGEOM_BERNOULLI, m=m)

    def extend(entries: list[MultiPoly], upto: int) -> None:
        unit = TruncSeries.from_coeffs(
            Fraction(math.factorial(m), math.factorial(k + m)) for k in range(upto + 1)
        )
        quotient = series_mul(exp_series(X, upto), series_inverse(unit))
        for k in range(len(entries), upto + 1):
            entries.append(coeff_egf(quotient, k))

    return _CACHE.prefix(spec, n, extend)[n]


def classical_bernoulli_poly(n: int) -> MultiPoly:
    """Classical Bernoulli polynomial (the m = 1 hypergeometric family)."""
    return hypergeom_bernoulli_poly(1, n)


def classical_euler_poly(n: int) -> MultiPoly:
    """Classical Euler polynomial (the m = 0 truncated family)."""
    return truncated_euler_poly(0, n)


def frobenius_euler_poly(n: int, r: int, lam: Scalar) -> MultiPoly:
    """Frobenius-Euler polynomial H_n^(r)(x | lambda), lambda != 1.

    Generating function ((1-lambda)/(e^t-lambda))^r e^{xt}; the r-th power is
    taken by iterated multiplication of the inverted base series.
    """
    if n < 0:
        raise ValueError(f"family indices must be non-negative, got n={n}")
    spec = FamilySpec(FamilyKind.FROBENIUS_EULER, r=r, lam=Fraction(lam))

    def extend(entries: list[MultiPoly], upto: int) -> None:
        scale = Fraction(1) / (1 - spec.lam)
        base = TruncSeries.from_coeffs(
            [Fraction(1)]
            + [Fraction(1, math.factorial(k)) * scale for k in range(1, upto + 1)]
        )
        inverted = series_inverse(base)
        power = monomial_series(1, 0, upto)
        for _ in range(spec.r):
            power = series_mul(power, inverted)
        result = series_mul(power, exp_series(X, upto))
        for k in range(len(entries), upto + 1):
            entries.append(coeff_egf(result, k))

    return _CACHE.prefix(spec, n, extend)[n]
