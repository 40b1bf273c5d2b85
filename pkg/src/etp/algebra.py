"""Exact scalars, sparse bivariate polynomials, and combinatorial tables.

The scalar field is ``fractions.Fraction``, re-exported as ``Rational``: it
keeps gcd(|numerator|, denominator) == 1 and denominator >= 1 after every
operation, so structural equality is mathematical equality. Polynomials live
in Q[x, y] and are stored sparsely as maps from exponent pairs to nonzero
coefficients; the zero polynomial is the empty map. Every value here is
immutable once constructed and safe to share between threads.
"""

from __future__ import annotations

import math
import threading
from fractions import Fraction
from typing import Mapping, Union

Rational = Fraction

#: An exponent pair: (power of x, power of y).
Exponent = tuple[int, int]

Scalar = Union[Rational, int]


def binomial(n: int, k: int) -> int:
    """Binomial coefficient C(n, k); 0 whenever k lies outside 0..n."""
    if n < 0:
        raise ValueError(f"binomial needs n >= 0, got {n}")
    if k < 0 or k > n:
        return 0
    return math.comb(n, k)


class StirlingTable:
    """Triangular table of Stirling numbers of the second kind.

    Rows satisfy S(0,0) = 1 and S(n,k) = k*S(n-1,k) + S(n-1,k-1); they are
    grown on demand and kept for the lifetime of the table. Rows are built
    completely before publication and growth happens under a lock, so
    concurrent readers never observe a partial row.
    """

    def __init__(self) -> None:
        self._rows: list[list[int]] = [[1]]
        self._lock = threading.Lock()

    def value(self, n: int, k: int) -> int:
        if n < 0 or k < 0:
            raise ValueError("stirling2 needs non-negative arguments")
        if k > n:
            return 0
        if n >= len(self._rows):
            with self._lock:
                while len(self._rows) <= n:
                    prev = self._rows[-1]
                    size = len(self._rows)
                    row = [0] * (size + 1)
                    row[size] = 1
                    for j in range(1, size):
                        row[j] = j * prev[j] + prev[j - 1]
                    self._rows.append(row)
        return self._rows[n][k]


_STIRLING = StirlingTable()


def stirling2(n: int, k: int) -> int:
    """Stirling number of the second kind S(n, k), from the shared table."""
    return _STIRLING.value(n, k)


class MultiPoly:
    """Sparse polynomial in x and y over the rationals.

    Terms map an exponent pair (e_x, e_y) to a nonzero ``Fraction``. The
    representation is canonical: zero coefficients are never stored, so two
    polynomials are mathematically equal exactly when their term maps are
    equal. Arithmetic accepts plain ints and Fractions and coerces them to
    constants.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[Exponent, Scalar] | None = None) -> None:
        clean: dict[Exponent, Fraction] = {}
        if terms:
            for (ex, ey), coef in terms.items():
                if ex < 0 or ey < 0:
                    raise ValueError(f"exponents must be non-negative, got ({ex}, {ey})")
                value = Fraction(coef)
                if value:
                    clean[(int(ex), int(ey))] = value
        self._terms = clean

    @staticmethod
    def const(value: Scalar) -> MultiPoly:
        return MultiPoly({(0, 0): Fraction(value)})

    @staticmethod
    def zero() -> MultiPoly:
        return MultiPoly()

    def terms(self) -> dict[Exponent, Fraction]:
        """A copy of the term map."""
        return dict(self._terms)

    def sorted_terms(self) -> list[tuple[Exponent, Fraction]]:
        """Terms in graded-lexicographic order, x before y, descending."""
        return sorted(
            self._terms.items(),
            key=lambda item: (item[0][0] + item[0][1], item[0][0]),
            reverse=True,
        )

    def is_zero(self) -> bool:
        return not self._terms

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {(0, 0)}

    def constant_value(self) -> Fraction:
        if not self.is_constant():
            raise ValueError(f"not a constant polynomial: {self!r}")
        return self._terms.get((0, 0), Fraction(0))

    def coeff(self, ex: int, ey: int = 0) -> Fraction:
        """Coefficient of x^ex * y^ey (0 when the monomial is absent)."""
        return self._terms.get((ex, ey), Fraction(0))

    def degree_x(self) -> int:
        """Highest power of x, or -1 for the zero polynomial."""
        return max((ex for ex, _ in self._terms), default=-1)

    def total_degree(self) -> int:
        """Highest total degree, or -1 for the zero polynomial."""
        return max((ex + ey for ex, ey in self._terms), default=-1)

    # -- arithmetic ---------------------------------------------------------

    @staticmethod
    def _coerce(other: object) -> MultiPoly | None:
        if isinstance(other, MultiPoly):
            return other
        if isinstance(other, (int, Fraction)):
            return MultiPoly.const(other)
        return None

    def __eq__(self, other: object) -> bool:
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self._terms == coerced._terms

    def __add__(self, other: object) -> MultiPoly:
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        total = dict(self._terms)
        for key, value in coerced._terms.items():
            total[key] = total.get(key, Fraction(0)) + value
        return MultiPoly(total)

    __radd__ = __add__

    def __neg__(self) -> MultiPoly:
        return MultiPoly({key: -value for key, value in self._terms.items()})

    def __sub__(self, other: object) -> MultiPoly:
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return self + (-coerced)

    def __rsub__(self, other: object) -> MultiPoly:
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        return coerced - self

    def __mul__(self, other: object) -> MultiPoly:
        coerced = self._coerce(other)
        if coerced is None:
            return NotImplemented
        product: dict[Exponent, Fraction] = {}
        for (ax, ay), ac in self._terms.items():
            for (bx, by), bc in coerced._terms.items():
                key = (ax + bx, ay + by)
                product[key] = product.get(key, Fraction(0)) + ac * bc
        return MultiPoly(product)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> MultiPoly:
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"polynomial power needs a non-negative int, got {exponent!r}")
        result = MultiPoly.const(1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- evaluation and substitution ----------------------------------------

    def eval_at(self, x_value: Scalar, y_value: Scalar = 0) -> Fraction:
        """Exact value at rational arguments."""
        xv, yv = Fraction(x_value), Fraction(y_value)
        total = Fraction(0)
        for (ex, ey), coef in self._terms.items():
            total += coef * xv**ex * yv**ey
        return total

    def subs_x(self, replacement: MultiPoly | Scalar) -> MultiPoly:
        """Substitute a polynomial for x, leaving y untouched."""
        sub = self._coerce(replacement)
        if sub is None:
            raise TypeError(f"cannot substitute {replacement!r}")
        top = max((ex for ex, _ in self._terms), default=0)
        powers = [MultiPoly.const(1)]
        for _ in range(top):
            powers.append(powers[-1] * sub)
        result = MultiPoly.zero()
        for (ex, ey), coef in self._terms.items():
            result = result + powers[ex] * MultiPoly({(0, ey): coef})
        return result

    def deriv_x(self) -> MultiPoly:
        """Partial derivative with respect to x."""
        return MultiPoly(
            {(ex - 1, ey): coef * ex for (ex, ey), coef in self._terms.items() if ex >= 1}
        )

    def __repr__(self) -> str:
        if not self._terms:
            return "MultiPoly(0)"
        inner = ", ".join(f"({ex},{ey}): {coef}" for (ex, ey), coef in self.sorted_terms())
        return f"MultiPoly({inner})"

    __hash__ = None  # type: ignore[assignment]  # mutable-dict backed, not hashable


#: The coordinate polynomials.
X = MultiPoly({(1, 0): 1})
Y = MultiPoly({(0, 1): 1})
ONE = MultiPoly.const(1)
ZERO = MultiPoly.zero()


def falling_factorial_poly(mu: int) -> MultiPoly:
    """Falling factorial x(x-1)...(x-mu+1) as a polynomial; 1 when mu=0."""
    if mu < 0:
        raise ValueError(f"falling factorial needs mu >= 0, got {mu}")
    out = ONE
    for i in range(mu):
        out = out * (X - i)
    return out


def rising_factorial_poly(mu: int) -> MultiPoly:
    """Rising factorial x(x+1)...(x+mu-1) as a polynomial; 1 when mu=0."""
    if mu < 0:
        raise ValueError(f"rising factorial needs mu >= 0, got {mu}")
    out = ONE
    for i in range(mu):
        out = out * (X + i)
    return out
