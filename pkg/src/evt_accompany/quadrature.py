"""Adaptive Simpson integration for smooth, monotone-ish integrands."""

from __future__ import annotations

import math
from typing import Callable

from .errors import QuadratureError

# Absolute target; the max() against float granularity of the running sum keeps
# large-magnitude integrals (|I| >> 1) from recursing forever on rounding noise.
DEFAULT_TOL = 1e-12
DEFAULT_DEPTH = 60
_EPS = 2.2204460492503131e-16


def _simpson(f, a, fa, b, fb):
    m = 0.5 * (a + b)
    fm = f(m)
    return m, fm, (b - a) * (fa + 4.0 * fm + fb) / 6.0


def integrate(f: Callable[[float], float], a: float, b: float,
              tol: float = DEFAULT_TOL, depth: int = DEFAULT_DEPTH) -> float:
    """Integrate f over [a, b] by adaptive Simpson with absolute tolerance tol.

    Accepts a > b (returns the signed integral). Raises QuadratureError when
    the recursion depth cap is hit before the local error estimate falls below
    tolerance.
    """
    if a == b:
        return 0.0
    sign = 1.0
    if a > b:
        a, b, sign = b, a, -1.0
    fa, fb = f(a), f(b)
    m, fm, whole = _simpson(f, a, fa, b, fb)
    return sign * _adaptive(f, a, fa, b, fb, m, fm, whole, tol, depth)


def _adaptive(f, a, fa, b, fb, m, fm, whole, tol, depth):
    lm, flm, left = _simpson(f, a, fa, m, fm)
    rm, frm, right = _simpson(f, m, fm, b, fb)
    est = left + right - whole
    # 1/15 Richardson factor for Simpson halving.
    if abs(est) <= 15.0 * max(tol, 32.0 * _EPS * (abs(left) + abs(right))):
        return left + right + est / 15.0
    if depth <= 0:
        raise QuadratureError(
            f"adaptive Simpson hit depth cap on [{a!r}, {b!r}] (estimate {est!r})")
    half = 0.5 * tol
    return (_adaptive(f, a, fa, m, fm, lm, flm, left, half, depth - 1)
            + _adaptive(f, m, fm, b, fb, rm, frm, right, half, depth - 1))


def integrate_log_substituted(f_of_t: Callable[[float], float], a: float, b: float,
                              tol: float = DEFAULT_TOL, depth: int = DEFAULT_DEPTH) -> float:
    """Integrate f(t) dt over [a, b] with 0 < a via the substitution t = e^s.

    Wide ranges [a, b] with slowly varying integrands (tails, iterated logs)
    condition far better on the log scale. The transform is exact:
    integral f(t) dt = integral f(e^s) e^s ds over [log a, log b].
    """
    if a <= 0.0 or b <= 0.0:
        raise QuadratureError("log substitution needs positive endpoints")

    def g(s: float) -> float:
        t = math.exp(s)
        return f_of_t(t) * t

    return integrate(g, math.log(a), math.log(b), tol=tol, depth=depth)
