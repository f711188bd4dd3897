"""The scaled maximum law P(M_n <= a x + b) and its approximants.

The load-bearing identity: with gamma = -log[tail(b + a x)/tail(b)] and
tail(b) = 1/n,

    F^n(a x + b) = exp(-e^-gamma) * exp(-Sigma/n),
    Sigma        = sum_k exp(-(k+2) gamma) / ((k+2) n^k),

holds exactly (it is the Taylor series of n log(1-s) regrouped), so the
two-term evaluation must reproduce exact_max_cdf to rounding noise wherever
the series converges (gamma > -log n). That identity is the module's master
oracle. Dropping the Sigma factor gives the accompanying law, which trades
an O(1/n) error for the Gumbel limit's logarithmic one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

from .errors import DivergenceError, DomainError
from .gamma import gamma_exact
from .norming import NormingPair
from .tails import DistributionSpec

_SIGMA_TERM_CAP = 200
_SIGMA_REL_STOP = 1e-16


# ---------------------------------------------------------------------------
# Approximant kinds
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ApproximantKind:
    name: str = field(init=False, default="")


@dataclass(frozen=True)
class Gumbel(ApproximantKind):
    name: str = field(init=False, default="gumbel")


@dataclass(frozen=True)
class Accompanying(ApproximantKind):
    name: str = field(init=False, default="accompanying")


@dataclass(frozen=True)
class TwoTerm(ApproximantKind):
    name: str = field(init=False, default="two_term")


@dataclass(frozen=True)
class FirstOrderCorrected(ApproximantKind):
    name: str = field(init=False, default="first_order")


@dataclass(frozen=True)
class SecondOrder(ApproximantKind):
    """Second-order-condition approximant; the caller supplies the regular
    variation index rho <= 0 and the rate handle A(n) -> 0."""

    rho: float = 0.0
    a_n: Callable[[float], float] = lambda n: 0.0
    name: str = field(init=False, default="second_order")

    def __post_init__(self) -> None:
        if self.rho > 0.0:
            raise DomainError(f"SecondOrder needs rho <= 0, got {self.rho!r}")

    @classmethod
    def weibull_preset(cls, p: float) -> "SecondOrder":
        """rho = 0 with A(n) = 1/(p log n), the Weibull-like rate scale."""
        if p <= 0.0:
            raise DomainError(f"weibull_preset needs p > 0, got {p!r}")
        return cls(rho=0.0, a_n=lambda n: 1.0 / (p * math.log(n)))


@dataclass(frozen=True)
class EvalPoint:
    """One grid evaluation: exact value, approximant value, signed gap."""

    x: float
    exact: float
    approx: float

    @property
    def signed_error(self) -> float:
        return self.exact - self.approx


# ---------------------------------------------------------------------------
# Exact law and approximants
# ---------------------------------------------------------------------------

def exact_max_cdf(dist: DistributionSpec, pair: NormingPair, x: float) -> float:
    """F^n(a x + b) = exp(n log(1 - tail(a x + b))), via log1p for stability.

    Below the support edge the atom completion gives F(x0)^n.
    """
    z = pair.b + pair.a * x
    s = dist.tail(dist.x0) if z < dist.x0 else dist.tail(z)
    if s >= 1.0:  # tail(x0) = 1: all mass above, F(x0) = 0
        return 0.0
    return math.exp(pair.n * math.log1p(-s))


def gumbel_cdf(x: float) -> float:
    """The Gumbel limit exp(-e^-x)."""
    if x < -700.0:
        return 0.0
    return math.exp(-math.exp(-x))


def _gamma_or_cutoff(dist: DistributionSpec, pair: NormingPair, x: float) -> float:
    # below the support edge the tail ratio is 1/tail(b) = n: gamma = -log n,
    # the exact cutoff boundary
    if pair.b + pair.a * x < dist.x0:
        return -math.log(pair.n)
    return gamma_exact(dist, pair, x).value


def accompanying_law(dist: DistributionSpec, pair: NormingPair, x: float) -> float:
    """B_n(x) = exp(-e^-gamma(x)) for gamma(x) >= -log n, else 0.

    At the cutoff itself the closed branch applies: exp(-e^(log n)) = e^-n.
    """
    g = _gamma_or_cutoff(dist, pair, x)
    if g < -math.log(pair.n):
        return 0.0
    if g < -700.0:  # e^-gamma would overflow; the value is already sub-underflow
        return 0.0
    return math.exp(-math.exp(-g))


def sigma_series(dist: DistributionSpec, pair: NormingPair, x: float) -> float:
    """Sigma(x) = sum_{k>=0} exp(-(k+2) gamma) / ((k+2) n^k).

    Converges iff e^-gamma/n < 1, i.e. gamma > -log n; outside that the
    series diverges and the accompanying law's cutoff branch is in force.
    Partial sums stop once the next term drops below 1e-16 of the running
    sum (never more than ~90 terms inside the guarded region).
    """
    g = gamma_exact(dist, pair, x).value
    n = float(pair.n)
    if g <= -math.log(n):
        raise DivergenceError(
            f"sigma series diverges at gamma = {g!r} <= -log n = {-math.log(n)!r}")
    lead = math.exp(-2.0 * g)
    if lead == 0.0:
        return 0.0
    ratio = math.exp(-g) / n  # < 1 by the guard above
    total = 0.0
    term_exp = lead
    for k in range(_SIGMA_TERM_CAP):
        total += term_exp / (k + 2.0)
        term_exp *= ratio
        if term_exp / (k + 3.0) < _SIGMA_REL_STOP * total:
            return total
    raise DivergenceError(
        f"sigma series needed more than {_SIGMA_TERM_CAP} terms (gamma = {g!r} "
        f"is too close to the -log n cutoff)")


def two_term(dist: DistributionSpec, pair: NormingPair, x: float) -> float:
    """exp(-e^-gamma) * exp(-Sigma/n); equals exact_max_cdf up to rounding."""
    g = gamma_exact(dist, pair, x).value
    sigma = sigma_series(dist, pair, x)
    if g < -700.0:
        return 0.0
    return math.exp(-math.exp(-g) - sigma / pair.n)


def first_order_corrected(x: float, gamma_value: float) -> float:
    """Lambda(x) + Lambda(x) e^-x (gamma - x): the one-term Gumbel correction.

    A charge, not a law: values may leave [0, 1] slightly and are not clamped.
    """
    if x < -700.0:
        return 0.0
    u = math.exp(-x)
    lam = math.exp(-u) if u < 745.0 else 0.0
    log_slope = -u - x  # the weight Lambda(x) e^-x on the log scale
    slope = math.exp(log_slope) if log_slope > -745.0 else 0.0
    return lam + slope * (gamma_value - x)


def h_function(x: float, rho: float) -> float:
    """Second-order shape H(x): (1/rho)((x^rho - 1)/rho - log x) for rho < 0,
    continuously extended to log^2(x)/2 at rho = 0. Defined for x > 0 only."""
    if x <= 0.0:
        raise DomainError(f"h_function needs x > 0, got {x!r}")
    if rho > 0.0:
        raise DomainError(f"h_function needs rho <= 0, got {rho!r}")
    lx = math.log(x)
    if rho == 0.0:
        return 0.5 * lx * lx
    u = rho * lx
    if abs(u) < 1e-4:
        # series of (e^u - u - 1)/rho^2 to avoid cancellation near rho = 0
        return lx * lx * (0.5 + u / 6.0 + u * u / 24.0)
    return (math.expm1(u) - u) / (rho * rho)


def second_order_approx(dist: DistributionSpec, pair: NormingPair, x: float,
                        rho: float, a_n_value: float) -> float:
    """exp(-e^-x - A(n) H(x)) * exp(-Sigma/n), the second-order-condition law."""
    if x <= 0.0:
        raise DomainError(f"second_order_approx needs x > 0 (H involves log x), got {x!r}")
    sigma = sigma_series(dist, pair, x)
    exponent = -math.exp(-x) - a_n_value * h_function(x, rho) - sigma / pair.n
    return math.exp(exponent)


def evaluate(dist: DistributionSpec, pair: NormingPair, x: float,
             kind: ApproximantKind) -> float:
    """Evaluate one approximant at one scaled coordinate."""
    if isinstance(kind, Gumbel):
        return gumbel_cdf(x)
    if isinstance(kind, Accompanying):
        return accompanying_law(dist, pair, x)
    if isinstance(kind, TwoTerm):
        return two_term(dist, pair, x)
    if isinstance(kind, FirstOrderCorrected):
        return first_order_corrected(x, _gamma_or_cutoff(dist, pair, x))
    if isinstance(kind, SecondOrder):
        return second_order_approx(dist, pair, x, kind.rho, kind.a_n(pair.n))
    raise DomainError(f"unknown approximant kind {kind!r}")
