"""Symbolic identity checks over the polynomial families.

Every check builds both sides of an identity as exact bivariate polynomials
and reports the residual (lhs - rhs); a check passes exactly when that
residual is the zero polynomial. `verify_grid` sweeps a catalog of checks
over parameter ranges in a deterministic order.

The identity ids below are the engine's stable catalog names; they are the
values accepted by the CLI's --ids flag.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Iterable, Literal, Sequence

from .algebra import (
    X,
    Y,
    MultiPoly,
    Rational,
    Scalar,
    binomial,
    falling_factorial_poly,
    rising_factorial_poly,
    stirling2,
)
from .families import (
    classical_bernoulli_poly,
    classical_euler_poly,
    frobenius_euler_poly,
    hypergeom_bernoulli_poly,
    truncated_euler_number,
    truncated_euler_poly,
)

HALF = Fraction(1, 2)

#: Default verification grid bounds.
DEFAULT_M_MAX = 3
DEFAULT_N_MAX = 10
DEFAULT_LAMBDAS: tuple[Rational, ...] = (Fraction(-1), Fraction(2), Fraction(1, 2))
DEFAULT_R_MAX = 2


class IdentityId(Enum):
    """Catalog of verifiable identities."""

    T3_addition = "T3_addition"
    T4_numbers = "T4_numbers"
    T5_stirling_falling = "T5_stirling_falling"
    T6_stirling_rising = "T6_stirling_rising"
    T7_frobenius = "T7_frobenius"
    T8_hyperg_bernoulli = "T8_hyperg_bernoulli"
    C1_eq1 = "C1_eq1"
    C1_eq2 = "C1_eq2"
    C1_eq3 = "C1_eq3"
    C1_eq202 = "C1_eq202"
    C1_eq212 = "C1_eq212"
    C1_eq222 = "C1_eq222"
    T9_adjacent_m = "T9_adjacent_m"
    C2_eq302 = "C2_eq302"
    C2_eq312 = "C2_eq312"
    C2_eq322 = "C2_eq322"
    L1_umbral_bernoulli = "L1_umbral_bernoulli"
    L1_umbral_euler = "L1_umbral_euler"


@dataclass(frozen=True)
class IdentityReport:
    """Outcome of one identity check at one parameter point.

    `passed` holds exactly when `residual` (= lhs - rhs) is the zero
    polynomial. For umbral-transfer checks, `premise_passed` distinguishes a
    failed premise from a failed conclusion; when the premise fails, lhs and
    rhs are the premise sides.
    """

    id: IdentityId
    params: dict
    passed: bool
    lhs: MultiPoly
    rhs: MultiPoly
    residual: MultiPoly
    premise_passed: bool | None = None


def _report(
    id_: IdentityId,
    params: dict,
    lhs: MultiPoly,
    rhs: MultiPoly,
    premise_passed: bool | None = None,
) -> IdentityReport:
    residual = lhs - rhs
    return IdentityReport(id_, params, residual.is_zero(), lhs, rhs, residual, premise_passed)


def _euler_at_y(m: int, j: int) -> MultiPoly:
    """The truncated Euler polynomial with y substituted for x."""
    return truncated_euler_poly(m, j).subs_x(Y)


# -- truncated Euler identities ----------------------------------------------


def check_T3(m: int, n: int) -> IdentityReport:
    """Addition law: E(m,n)(x+y) = sum_j C(n,j) E(m,j)(x) y^(n-j)."""
    lhs = truncated_euler_poly(m, n).subs_x(X + Y)
    rhs = MultiPoly.zero()
    for j in range(n + 1):
        rhs = rhs + binomial(n, j) * truncated_euler_poly(m, j) * Y ** (n - j)
    return _report(IdentityId.T3_addition, {"m": m, "n": n}, lhs, rhs)


def check_T4(m: int, n: int) -> IdentityReport:
    """Number expansion: E(m,n)(x) = sum_k C(n,k) E(m,n-k)(0) x^k."""
    lhs = truncated_euler_poly(m, n)
    rhs = MultiPoly.zero()
    for k in range(n + 1):
        rhs = rhs + binomial(n, k) * truncated_euler_number(m, n - k) * X**k
    return _report(IdentityId.T4_numbers, {"m": m, "n": n}, lhs, rhs)


def check_T5(m: int, n: int) -> IdentityReport:
    """Falling-factorial expansion with Stirling-number weights."""
    lhs = truncated_euler_poly(m, n)
    rhs = MultiPoly.zero()
    for mu in range(n + 1):
        weight = Fraction(0)
        for ell in range(mu, n + 1):
            weight += stirling2(ell, mu) * binomial(n, ell) * truncated_euler_number(m, n - ell)
        rhs = rhs + weight * falling_factorial_poly(mu)
    return _report(IdentityId.T5_stirling_falling, {"m": m, "n": n}, lhs, rhs)


def check_T6(m: int, n: int) -> IdentityReport:
    """Rising-factorial expansion; the family is evaluated at -mu."""
    lhs = truncated_euler_poly(m, n)
    rhs = MultiPoly.zero()
    for mu in range(n + 1):
        weight = Fraction(0)
        for ell in range(mu, n + 1):
            weight += (
                stirling2(ell, mu)
                * binomial(n, ell)
                * truncated_euler_poly(m, n - ell).eval_at(-mu)
            )
        rhs = rhs + weight * rising_factorial_poly(mu)
    return _report(IdentityId.T6_stirling_rising, {"m": m, "n": n}, lhs, rhs)


def _t7_rhs(m: int, n: int, r: int, lam: Rational, sign_base: Rational) -> MultiPoly:
    scale = (Fraction(1) / (1 - lam)) ** r
    rhs = MultiPoly.zero()
    for mu in range(n + 1):
        inner = Fraction(0)
        for i in range(r + 1):
            inner += (
                binomial(r, i)
                * sign_base ** (r - i)
                * truncated_euler_poly(m, n - mu).eval_at(i)
            )
        rhs = rhs + scale * binomial(n, mu) * inner * frobenius_euler_poly(mu, r, lam)
    return rhs


def check_T7(m: int, n: int, r: int, lam: Scalar) -> IdentityReport:
    """Frobenius-Euler expansion of the truncated family.

    The alternating factor in the inner sum admits two readings, (-1)^(r-i)
    and (-lambda)^(r-i); both are tried, first the former, and the params
    record which one balanced ("variant": "minus_one" | "minus_lambda", or
    "none" when neither does).
    """
    lam = Fraction(lam)
    if lam == 1:
        raise ValueError("lambda must differ from 1")
    lhs = truncated_euler_poly(m, n)
    params = {"m": m, "n": n, "r": r, "lambda": lam}
    rhs_unit = _t7_rhs(m, n, r, lam, Fraction(-1))
    if (lhs - rhs_unit).is_zero():
        return _report(IdentityId.T7_frobenius, {**params, "variant": "minus_one"}, lhs, rhs_unit)
    rhs_lam = _t7_rhs(m, n, r, lam, -lam)
    if (lhs - rhs_lam).is_zero():
        return _report(
            IdentityId.T7_frobenius, {**params, "variant": "minus_lambda"}, lhs, rhs_lam
        )
    return _report(IdentityId.T7_frobenius, {**params, "variant": "none"}, lhs, rhs_unit)


def check_T8(m: int, n: int) -> IdentityReport:
    """Mixed convolution of hypergeometric Bernoulli and truncated Euler values."""
    lhs = MultiPoly.zero()
    for j in range(n + 1):
        lhs = lhs + binomial(n, j) * (
            hypergeom_bernoulli_poly(m, j) * Y ** (n - j)
            - HALF * _euler_at_y(m, j) * X ** (n - j)
        )
    lhs = binomial(n + m, n) * lhs
    rhs = MultiPoly.zero()
    for j in range(n + m + 1):
        rhs = rhs + binomial(n + m, j) * _euler_at_y(m, j) * hypergeom_bernoulli_poly(
            m, n + m - j
        )
    rhs = HALF * rhs
    return _report(IdentityId.T8_hyperg_bernoulli, {"m": m, "n": n}, lhs, rhs)


def check_T9(m: int, n: int) -> IdentityReport:
    """Convolution tying orders m and m+1; the middle sum is empty at n=0."""
    lhs = MultiPoly.zero()
    for j in range(n + 1):
        lhs = lhs + binomial(n, j) * truncated_euler_poly(m + 1, n - j) * Y**j
    lhs = 2 * lhs
    middle = MultiPoly.zero()
    for j in range(n):
        middle = middle + binomial(n - 1, j) * _euler_at_y(m, n - j - 1) * X**j
    lhs = lhs - Fraction(2 * n, m + 1) * middle
    rhs = MultiPoly.zero()
    for j in range(n + 1):
        rhs = rhs + binomial(n, j) * truncated_euler_poly(m + 1, n - j) * _euler_at_y(m, j)
    return _report(IdentityId.T9_adjacent_m, {"m": m, "n": n}, lhs, rhs)


# -- classical corollaries ----------------------------------------------------


def _euler_y(j: int) -> MultiPoly:
    return classical_euler_poly(j).subs_x(Y)


def check_C1(which: int, n: int) -> IdentityReport:
    """Shifted-binomial identities for the classical Euler family.

    Selector values: 1, 2, 3, 202, 212, 222."""
    ids = {
        1: IdentityId.C1_eq1,
        2: IdentityId.C1_eq2,
        3: IdentityId.C1_eq3,
        202: IdentityId.C1_eq202,
        212: IdentityId.C1_eq212,
        222: IdentityId.C1_eq222,
    }
    if which not in ids:
        raise ValueError(f"unknown equation selector {which}")
    lhs = MultiPoly.zero()
    rhs = MultiPoly.zero()
    if which == 1:
        # sum_j C(n,j) E_j(y) ((x-1)^(n-j) + x^(n-j)) = 2 (x+y-1)^n
        for j in range(n + 1):
            lhs = lhs + binomial(n, j) * _euler_y(j) * ((X - 1) ** (n - j) + X ** (n - j))
        rhs = 2 * (X + Y - 1) ** n
    elif which in (2, 3):
        # same shape with the powers of x replaced by a classical family
        family = classical_bernoulli_poly if which == 2 else classical_euler_poly
        for j in range(n + 1):
            lhs = lhs + binomial(n, j) * _euler_y(j) * (
                family(n - j).subs_x(X - 1) + family(n - j)
            )
        rhs = 2 * family(n).subs_x(X + Y - 1)
    elif which == 202:
        # sum_j C(n,j) (B_j(x) y^(n-j) - j (y-1)^(j-1) x^(n-j))
        #   = sum_j C(n,j) (y-1)^j B_(n-j)(x)
        for j in range(n + 1):
            lhs = lhs + binomial(n, j) * classical_bernoulli_poly(j) * Y ** (n - j)
            if j >= 1:
                lhs = lhs - binomial(n, j) * j * (Y - 1) ** (j - 1) * X ** (n - j)
            rhs = rhs + binomial(n, j) * (Y - 1) ** j * classical_bernoulli_poly(n - j)
    else:
        # eq 212 (Bernoulli) and eq 222 (Euler): the umbral images of eq 202
        family = classical_bernoulli_poly if which == 212 else classical_euler_poly
        for j in range(n + 1):
            lhs = lhs + binomial(n, j) * classical_bernoulli_poly(j) * family(n - j).subs_x(Y)
            if j >= 1:
                lhs = lhs - binomial(n, j) * j * family(j - 1).subs_x(Y - 1) * X ** (n - j)
            rhs = rhs + binomial(n, j) * family(j).subs_x(Y - 1) * classical_bernoulli_poly(n - j)
    return _report(ids[which], {"which": which, "n": n}, lhs, rhs)


def check_C2(which: int, n: int) -> IdentityReport:
    """Mixed shifted-power sums over the classical Euler family.

    Selector values: 302, 312, 322."""
    ids = {302: IdentityId.C2_eq302, 312: IdentityId.C2_eq312, 322: IdentityId.C2_eq322}
    if which not in ids:
        raise ValueError(f"unknown equation selector {which}")
    if which == 302:
        def shifted(k: int) -> MultiPoly:
            return (X - 1) ** k

        def plain(k: int) -> MultiPoly:
            return X**k
    elif which == 312:
        def shifted(k: int) -> MultiPoly:
            return classical_bernoulli_poly(k).subs_x(X - 1)

        plain = classical_bernoulli_poly
    else:
        def shifted(k: int) -> MultiPoly:
            return classical_euler_poly(k).subs_x(X - 1)

        plain = classical_euler_poly
    lhs = MultiPoly.zero()
    rhs = MultiPoly.zero()
    for j in range(n + 1):
        lhs = lhs + binomial(n, j) * (2 * shifted(n - j) * Y**j - _euler_y(n - j) * plain(j))
        rhs = rhs + binomial(n, j) * shifted(n - j) * _euler_y(j)
    return _report(ids[which], {"which": which, "n": n}, lhs, rhs)


# -- umbral transfer -----------------------------------------------------------

UmbralTarget = Literal["bernoulli", "euler"]

_UMBRAL_IDS: dict[str, IdentityId] = {
    "bernoulli": IdentityId.L1_umbral_bernoulli,
    "euler": IdentityId.L1_umbral_euler,
}


def umbral_transfer(
    a: Sequence[MultiPoly | Scalar],
    alpha: Scalar,
    b: Sequence[MultiPoly | Scalar],
    beta: Scalar,
    target: UmbralTarget,
) -> IdentityReport:
    """Transfer a power-basis identity to a classical polynomial family.

    Premise: sum_k a[k] (x+alpha)^k = sum_k b[k] (x+beta)^k. When it holds,
    the conclusion replaces each power with the target family at the shifted
    argument: sum_k a[k] P_k(x+alpha) = sum_k b[k] P_k(x+beta). A failed
    premise is reported as such (premise_passed=False, sides = premise
    sides); it is not an error.
    """
    if target not in _UMBRAL_IDS:
        raise ValueError(f"unknown umbral target {target!r}")
    id_ = _UMBRAL_IDS[target]
    family = classical_bernoulli_poly if target == "bernoulli" else classical_euler_poly
    alpha, beta = Fraction(alpha), Fraction(beta)
    a_polys = [p if isinstance(p, MultiPoly) else MultiPoly.const(p) for p in a]
    b_polys = [p if isinstance(p, MultiPoly) else MultiPoly.const(p) for p in b]
    params = {"alpha": alpha, "beta": beta, "len_a": len(a_polys), "len_b": len(b_polys)}

    premise_lhs = MultiPoly.zero()
    for k, coef in enumerate(a_polys):
        premise_lhs = premise_lhs + coef * (X + alpha) ** k
    premise_rhs = MultiPoly.zero()
    for k, coef in enumerate(b_polys):
        premise_rhs = premise_rhs + coef * (X + beta) ** k
    if not (premise_lhs - premise_rhs).is_zero():
        return _report(id_, params, premise_lhs, premise_rhs, premise_passed=False)

    lhs = MultiPoly.zero()
    for k, coef in enumerate(a_polys):
        lhs = lhs + coef * family(k).subs_x(X + alpha)
    rhs = MultiPoly.zero()
    for k, coef in enumerate(b_polys):
        rhs = rhs + coef * family(k).subs_x(X + beta)
    return _report(id_, params, lhs, rhs, premise_passed=True)


def power_shift_families(n: int) -> tuple[list[MultiPoly], int, list[MultiPoly], int]:
    """Single-shift coefficient families equivalent to the C1_eq1 identity.

    Rewrites that identity with everything on the (x-1) power basis on one
    side (folding 2(x+y-1)^n in binomially) and the plain x power basis on
    the other. Feeding these to `umbral_transfer` yields conclusions that
    rearrange to the C1_eq2 / C1_eq3 identities.
    """
    b = [binomial(n, k) * classical_euler_poly(n - k).subs_x(Y) for k in range(n + 1)]
    a = [2 * binomial(n, k) * Y ** (n - k) - b[k] for k in range(n + 1)]
    return a, -1, b, 0


def check_umbral(target: UmbralTarget, n: int) -> IdentityReport:
    """Umbral transfer applied to the shifted-power families at index n."""
    a, alpha, b, beta = power_shift_families(n)
    report = umbral_transfer(a, alpha, b, beta, target)
    params = {"n": n, **report.params}
    return IdentityReport(
        report.id, params, report.passed, report.lhs, report.rhs, report.residual,
        report.premise_passed,
    )


# -- grid runner ---------------------------------------------------------------


@dataclass(frozen=True)
class GridResult:
    """All reports from one verification sweep, in deterministic order."""

    reports: tuple[IdentityReport, ...]

    @property
    def passed(self) -> int:
        return sum(1 for r in self.reports if r.passed)

    @property
    def failed(self) -> int:
        return len(self.reports) - self.passed

    @property
    def failures(self) -> tuple[IdentityReport, ...]:
        return tuple(r for r in self.reports if not r.passed)

    def by_id(self) -> dict[IdentityId, tuple[int, int]]:
        """(passed, failed) per identity id, in catalog order."""
        out: dict[IdentityId, tuple[int, int]] = {}
        for report in self.reports:
            ok, bad = out.get(report.id, (0, 0))
            out[report.id] = (ok + 1, bad) if report.passed else (ok, bad + 1)
        return out

    def t7_variant_counts(self) -> dict[str, int]:
        """How often each sign variant balanced the Frobenius-Euler check."""
        counts: dict[str, int] = {}
        for report in self.reports:
            if report.id is IdentityId.T7_frobenius:
                variant = report.params.get("variant", "none")
                counts[variant] = counts.get(variant, 0) + 1
        return dict(sorted(counts.items()))


_C1_SELECTORS = {
    IdentityId.C1_eq1: 1,
    IdentityId.C1_eq2: 2,
    IdentityId.C1_eq3: 3,
    IdentityId.C1_eq202: 202,
    IdentityId.C1_eq212: 212,
    IdentityId.C1_eq222: 222,
}
_C2_SELECTORS = {
    IdentityId.C2_eq302: 302,
    IdentityId.C2_eq312: 312,
    IdentityId.C2_eq322: 322,
}
_MN_CHECKS = {
    IdentityId.T3_addition: check_T3,
    IdentityId.T4_numbers: check_T4,
    IdentityId.T5_stirling_falling: check_T5,
    IdentityId.T6_stirling_rising: check_T6,
    IdentityId.T8_hyperg_bernoulli: check_T8,
    IdentityId.T9_adjacent_m: check_T9,
}


def verify_grid(
    ids: Iterable[IdentityId] | None = None,
    m_max: int = DEFAULT_M_MAX,
    n_max: int = DEFAULT_N_MAX,
    lambdas: Sequence[Scalar] = DEFAULT_LAMBDAS,
    r_max: int = DEFAULT_R_MAX,
) -> GridResult:
    """Run the selected checks over the parameter grid.

    Iteration order is deterministic: catalog order over ids, then ascending
    parameter tuples (lambdas in the order given). Returns every report, not
    just failures.
    """
    if m_max < 0 or n_max < 0 or r_max < 0:
        raise ValueError("grid bounds must be non-negative")
    lams = [Fraction(value) for value in lambdas]
    if any(value == 1 for value in lams):
        raise ValueError("lambda must differ from 1")
    selected = set(IdentityId) if ids is None else set(ids)
    reports: list[IdentityReport] = []
    for id_ in IdentityId:
        if id_ not in selected:
            continue
        if id_ in _MN_CHECKS:
            check = _MN_CHECKS[id_]
            for m in range(m_max + 1):
                for n in range(n_max + 1):
                    reports.append(check(m, n))
        elif id_ is IdentityId.T7_frobenius:
            for m in range(m_max + 1):
                for n in range(n_max + 1):
                    for r in range(r_max + 1):
                        for lam in lams:
                            reports.append(check_T7(m, n, r, lam))
        elif id_ in _C1_SELECTORS:
            for n in range(n_max + 1):
                reports.append(check_C1(_C1_SELECTORS[id_], n))
        elif id_ in _C2_SELECTORS:
            for n in range(n_max + 1):
                reports.append(check_C2(_C2_SELECTORS[id_], n))
        elif id_ is IdentityId.L1_umbral_bernoulli:
            for n in range(n_max + 1):
                reports.append(check_umbral("bernoulli", n))
        elif id_ is IdentityId.L1_umbral_euler:
            for n in range(n_max + 1):
                reports.append(check_umbral("euler", n))
    return GridResult(tuple(reports))
