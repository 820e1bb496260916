"""Closed-form bounds for Gaussian random projection.

Every function here is a pure arithmetic evaluation of a published
inequality: the two-sided norm-concentration tail, the acute-angle
distortion interval, the projected-margin lower bounds (binary,
multiclass, single-parameter multiclass), the minimum projection
dimensions they induce, and the comparison bound of Balcan, Blum and
Vempala (2006) for error-allowed margins.
"""

from __future__ import annotations

import math
from typing import NamedTuple


class Interval(NamedTuple):
    lo: float
    hi: float


class TailBound(NamedTuple):
    """A failure bound of the form count * exp(-(n/2) * rate).

    The projection dimension n is left free so callers can evaluate the
    same bound along a whole grid.
    """

    count: float
    rate: float

    def failure_prob(self, n: int) -> float:
        return self.count * math.exp(-0.5 * n * self.rate)

    def success_prob(self, n: int) -> float:
        return max(0.0, 1.0 - self.failure_prob(n))


class ProjectedMargin(NamedTuple):
    """A projected-margin lower bound plus its separability reading.

    A non-positive bound does not certify separability of the projected
    data (it is a lower bound, so nothing more can be concluded).
    """

    value: float
    guaranteed_separable: bool


class Chi2Tails(NamedTuple):
    lower: float
    upper: float


def _check_eps(eps: float):
    if not 0.0 < eps < 1.0:
        raise ValueError(f"epsilon must lie strictly inside (0, 1), got {eps}")


def _check_gamma(gamma: float):
    if not 0.0 < gamma <= 1.0:
        raise ValueError(f"gamma must lie in (0, 1], got {gamma}")


def _check_n(n: int):
    if n < 1:
        raise ValueError(f"projection dimension must be positive, got {n}")


def _rate(eps: float) -> float:
    # exponent rate of the concentration tail: eps^2/2 - eps^3/3
    return eps * eps / 2.0 - eps**3 / 3.0


def tail_success_prob(n: int, eps: float) -> float:
    """Lower bound on Pr(||Rx||^2 / ||x||^2 in [1-eps, 1+eps]).

    Evaluates max(0, 1 - 2 exp(-(n/2)(eps^2/2 - eps^3/3))); the clamp at
    zero keeps small n / small eps combinations from going negative.
    """
    _check_n(n)
    _check_eps(eps)
    return max(0.0, 1.0 - 2.0 * math.exp(-0.5 * n * _rate(eps)))


def chi2_tails(n: int, eps: float) -> Chi2Tails:
    """The two one-sided chi-square tail estimates behind the norm bound.

    lower: Pr(||Rx||^2 <= (1-eps)||x||^2) <= exp(-n eps^2 / 4)
    upper: Pr(||Rx||^2 >= (1+eps)||x||^2) <= exp(-(n/2)(eps^2/2 - eps^3/3))
    """
    _check_n(n)
    _check_eps(eps)
    return Chi2Tails(math.exp(-n * eps * eps / 4.0), math.exp(-0.5 * n * _rate(eps)))


def angle_distortion_interval(gamma: float, eps: float) -> tuple[Interval, TailBound]:
    """Two-sided bound on the projected cosine of an acute pair.

    For original cosine gamma > 0, the projected cosine lies in

        [(1+eps)/(1-eps) gamma - 2 eps/(1-eps),
         1 - sqrt(1-eps^2)/(1+eps) + eps/(1+eps) + (1-eps)/(1+eps) gamma]

    except with probability at most 6 exp(-(n/2)(eps^2/2 - eps^3/3)).
    The failure probability is returned as a :class:`TailBound` (count 6,
    rate eps^2/2 - eps^3/3) so it can be evaluated at any n.
    """
    if gamma <= 0.0:
        raise ValueError("the distortion interval requires an acute pair (gamma > 0)")
    _check_gamma(gamma)
    _check_eps(eps)
    lo = (1.0 + eps) / (1.0 - eps) * gamma - 2.0 * eps / (1.0 - eps)
    hi = (
        1.0
        - math.sqrt(1.0 - eps * eps) / (1.0 + eps)
        + eps / (1.0 + eps)
        + (1.0 - eps) / (1.0 + eps) * gamma
    )
    return Interval(lo, hi), TailBound(6.0, _rate(eps))


def _check_union_params(eps: float, delta: float, m: int):
    _check_eps(eps)
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie strictly inside (0, 1), got {delta}")
    if m < 1:
        raise ValueError(f"dataset size must be positive, got {m}")


def _min_dim(eps: float, delta: float, union_count: float) -> int:
    """Least integer n with n > 12/(3 eps^2 - 2 eps^3) * ln(union_count / delta)."""
    bound = 12.0 / (3.0 * eps * eps - 2.0 * eps**3) * math.log(union_count / delta)
    return math.floor(bound) + 1


def min_dim_binary(eps: float, delta: float, m: int) -> int:
    """Smallest n for which the binary margin-preservation bound holds.

    The binary guarantee unions 6m tail events, giving
    n > 12/(3 eps^2 - 2 eps^3) ln(6m / delta).
    """
    _check_union_params(eps, delta, m)
    return _min_dim(eps, delta, 6.0 * m)


def min_dim_multiclass(eps: float, delta: float, m: int, num_classes: int) -> int:
    """As :func:`min_dim_binary` with a 6*L*m union count (L class vectors)."""
    _check_union_params(eps, delta, m)
    if num_classes < 1:
        raise ValueError(f"num_classes must be positive, got {num_classes}")
    return _min_dim(eps, delta, 6.0 * num_classes * m)


def min_dim_oneparam(eps: float, delta: float, m: int, num_classes: int) -> int:
    """As :func:`min_dim_binary` with a 6*m*(L-1) union count (L-1 rival classes)."""
    _check_union_params(eps, delta, m)
    if num_classes < 2:
        raise ValueError(f"the one-parameter bound needs num_classes >= 2, got {num_classes}")
    return _min_dim(eps, delta, 6.0 * m * (num_classes - 1))


def projected_margin_binary(gamma: float, eps: float) -> ProjectedMargin:
    """Lower bound gamma - 2 eps/(1-eps) on the projected binary margin."""
    _check_gamma(gamma)
    _check_eps(eps)
    value = gamma - 2.0 * eps / (1.0 - eps)
    return ProjectedMargin(value, value > 0.0)


def projected_margin_multiclass(gamma: float, eps: float) -> ProjectedMargin:
    """Lower bound on the projected normalised multiclass margin.

    -(1+3 eps)/(1-eps^2) + sqrt(1-eps^2)/(1+eps) + (1+eps)/(1-eps) gamma,
    evaluated exactly as printed.
    """
    _check_gamma(gamma)
    _check_eps(eps)
    value = (
        -(1.0 + 3.0 * eps) / (1.0 - eps * eps)
        + math.sqrt(1.0 - eps * eps) / (1.0 + eps)
        + (1.0 + eps) / (1.0 - eps) * gamma
    )
    return ProjectedMargin(value, value > 0.0)


def projected_margin_oneparam(gamma: float, eps: float, num_classes: int) -> ProjectedMargin:
    """Lower bound for the single-parameter multiclass construction.

    -2 eps/(1-eps) + (1+eps) gamma / (sqrt(2L) (1-eps)); the margin is
    preserved only up to the 1/sqrt(2L) factor in exchange for a single
    parameter vector.
    """
    _check_gamma(gamma)
    _check_eps(eps)
    if num_classes < 2:
        raise ValueError(f"the one-parameter bound needs num_classes >= 2, got {num_classes}")
    value = -2.0 * eps / (1.0 - eps) + (1.0 + eps) * gamma / (
        math.sqrt(2.0 * num_classes) * (1.0 - eps)
    )
    return ProjectedMargin(value, value > 0.0)


def balcan_min_dim(gamma: float, rho: float, delta: float, c: float = 1.0) -> float:
    """Dimension bound (c / gamma^2) ln(1/(rho delta)) for error-allowed margins.

    This is the comparison bound of Balcan et al. (2006) for preserving
    half the margin with error rho. It is real-valued (a comparison tool,
    not a ceiling). rho = 0 is rejected: an error-free margin makes the
    bound diverge, i.e. it would demand infinitely many projection
    dimensions.
    """
    _check_gamma(gamma)
    if rho == 0.0:
        raise ValueError(
            "rho = 0 makes the bound diverge (n = +infinity): error-free margins "
            "need a positive error rate under this bound"
        )
    if not 0.0 < rho < 1.0:
        raise ValueError(f"rho must lie strictly inside (0, 1), got {rho}")
    if not 0.0 < delta < 1.0:
        raise ValueError(f"delta must lie strictly inside (0, 1), got {delta}")
    if c <= 0.0:
        raise ValueError(f"the constant c must be positive, got {c}")
    return c / (gamma * gamma) * math.log(1.0 / (rho * delta))
