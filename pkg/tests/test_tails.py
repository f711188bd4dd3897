import math

import pytest

from evt_accompany import quadrature
from evt_accompany.errors import DomainError, ParseError
from evt_accompany.tails import (
    ExponentialUnit,
    GeneralizedVonMises,
    IteratedLogScale,
    LogWeibullLike,
    SlowlyVarying,
    WeibullLike,
    exp_tower,
    iterated_log,
    parse_dist,
)

BUILTINS = [
    ExponentialUnit(),
    WeibullLike(1.0, 2.0, 0.0),
    WeibullLike(1.0, 1.0, 1.0),
    WeibullLike(0.5, 0.5, 2.0),
    WeibullLike(2.0, 3.0, -1.0),
    WeibullLike(1.0, 2.0, 0.0, SlowlyVarying.log_power(1.0, 1.0)),
    LogWeibullLike(1.0, 2.0, 0.0),
    LogWeibullLike(1.0, 2.0, 1.0),
    LogWeibullLike(0.5, 3.0, 2.0, SlowlyVarying.log_power(2.0, -0.5)),
    IteratedLogScale(2, 1.0, 1.0),
]


def bisect_log_tail(dist, log_q, lo, hi, steps=200):
    """Independent 200-step bisection oracle on the log-tail scale."""
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if dist.log_tail(mid) > log_q:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


# -- log_tail / tail ---------------------------------------------------------

def test_log_tail_exponential_closed_form():
    assert ExponentialUnit().log_tail(3.0) == -3.0


def test_log_tail_weibull_squared():
    d = WeibullLike(1.0, 2.0, 0.0)
    assert d.log_tail(2.0) == pytest.approx(-4.0, abs=1e-15)


def test_log_tail_weibull_with_alpha():
    d = WeibullLike(1.0, 1.0, 1.0)
    assert d.log_tail(5.0) == pytest.approx(math.log(5.0) - 5.0, abs=1e-12)


def test_tail_exponential_values():
    d = ExponentialUnit()
    assert d.tail(0.0) == 1.0
    assert d.tail(math.log(10.0)) == pytest.approx(0.1, rel=1e-14)


def test_tail_logweibull_at_e_squared():
    d = LogWeibullLike(1.0, 2.0, 0.0)
    assert d.tail(math.e ** 2) == pytest.approx(math.exp(-4.0), rel=1e-12)


def test_log_tail_below_support_rejected():
    d = LogWeibullLike(1.0, 2.0, 0.0)
    with pytest.raises(DomainError):
        d.log_tail(d.x0 - 0.5)


@pytest.mark.parametrize("dist", BUILTINS, ids=lambda d: d.label)
def test_tail_monotone_and_vanishing(dist):
    xs = [dist.x0 + (dist.x0 + 1.0) * 0.37 * i for i in range(1, 12)]
    values = [dist.log_tail(x) for x in [dist.x0] + xs]
    for lo, hi in zip(values, values[1:]):
        assert hi < lo
    # iterated-log tails are the heaviest built-ins, so the bar is modest
    big = dist.x0 + 1e4 * (dist.x0 + 1.0)
    assert dist.tail(big) < 1e-5
    assert dist.log_tail(big) < dist.log_tail(dist.x0 + 1.0) - 5.0


# -- quantile ----------------------------------------------------------------

def test_quantile_exponential():
    assert ExponentialUnit().quantile_tail(1e-3) == pytest.approx(math.log(1000.0), rel=1e-14)


def test_quantile_weibull_analytic_inverse():
    d = WeibullLike(1.0, 2.0, 0.0)
    for n in (1e2, 1e4, 1e8):
        assert d.quantile_tail(1.0 / n) == pytest.approx(math.sqrt(math.log(n)), rel=1e-11)


def test_quantile_weibull_bisection_oracle():
    d = WeibullLike(2.0, 1.0, 1.0)
    want = bisect_log_tail(d, math.log(1e-6), d.x0, 50.0)
    assert d.quantile_tail(1e-6) == pytest.approx(want, abs=1e-10)


def test_quantile_out_of_range():
    d = WeibullLike(1.0, 0.5, 2.0)  # tail(x0) ~ 0.67 < 1
    with pytest.raises(DomainError):
        d.quantile_tail(0.9)
    with pytest.raises(DomainError):
        d.quantile_tail(0.0)


@pytest.mark.parametrize("dist", BUILTINS, ids=lambda d: d.label)
def test_quantile_round_trip(dist):
    for k in range(1, 13):
        q = 10.0 ** -k
        if q > dist.tail(dist.x0):
            continue
        x = dist.quantile_tail(q)
        assert abs(dist.log_tail(x) - math.log(q)) <= 1e-10


# -- von Mises components ----------------------------------------------------

def test_components_exponential_flavour_constant():
    f, g, c = WeibullLike(1.0, 1.0, 0.0).von_mises_components(7.0)
    assert (f, g, c) == (1.0, 1.0, 1.0)


def test_components_weibull_p2():
    f, g, c = WeibullLike(1.0, 2.0, 0.0).von_mises_components(10.0)
    assert f == pytest.approx(0.05, abs=1e-15)
    assert g == 1.0
    assert c == 1.0


def test_components_logweibull_alpha3():
    t = math.e ** 4
    f, g, _ = LogWeibullLike(1.0, 2.0, 3.0).von_mises_components(t)
    assert f == pytest.approx(t / 8.0, rel=1e-13)
    assert g == pytest.approx(0.625, abs=1e-13)


def test_components_iterated_log():
    il = IteratedLogScale(2, 1.0, 1.0)
    t = 1e4
    f, g, c = il.von_mises_components(t)
    assert f == pytest.approx(t / math.log(math.log(t)), rel=1e-13)
    assert g == 1.0 and c == 1.0


@pytest.mark.parametrize("dist", BUILTINS, ids=lambda d: d.label)
def test_g_tends_to_one(dist):
    gaps = []
    for t in (1e2, 1e3, 1e4, 1e5):
        if t < dist.x0:
            t = dist.x0 + t
        _, g, _ = dist.von_mises_components(t)
        gaps.append(abs(g - 1.0))
    for lo, hi in zip(gaps, gaps[1:]):
        assert hi <= lo + 1e-15


@pytest.mark.parametrize("dist", [d for d in BUILTINS
                                  if isinstance(d, (WeibullLike, LogWeibullLike))],
                         ids=lambda d: d.label)
def test_representation_consistency(dist):
    # the closed-form log tail must agree with -integral of g/f from x0
    for x in (dist.x0 + 3.0, 50.0, 1e3):
        if x <= dist.x0:
            continue
        direct = dist.log_tail(x) - dist.log_tail(dist.x0)
        lo = max(dist.x0, 1e-300)
        integral = quadrature.integrate_log_substituted(
            lambda t: dist.von_mises_components(t)[1] / dist.von_mises_components(t)[0],
            lo, x)
        assert direct == pytest.approx(-integral, rel=1e-8, abs=1e-10)


def test_f_prime_tends_to_zero():
    # numeric f'(t) along growing t for a family where f is not constant
    d = WeibullLike(1.0, 2.0, 0.0)
    slopes = []
    for t in (1e2, 1e3, 1e4, 1e5):
        h = 1e-4 * t
        f_hi = d.von_mises_components(t + h)[0]
        f_lo = d.von_mises_components(t - h)[0]
        slopes.append(abs((f_hi - f_lo) / (2.0 * h)))
    for lo, hi in zip(slopes, slopes[1:]):
        assert hi < lo


# -- slowly varying ----------------------------------------------------------

def test_slowly_varying_ratio_limit():
    for ell in (SlowlyVarying.const(2.0), SlowlyVarying.log_power(1.0, 1.5)):
        for lam in (0.5, 2.0, 10.0):
            ratios = [ell.value(lam * x) / ell.value(x) for x in (1e3, 1e8, 1e16)]
            gaps = [abs(r - 1.0) for r in ratios]
            assert gaps[0] >= gaps[1] >= gaps[2]
            assert gaps[-1] < 0.25 * gaps[0] or gaps[0] < 1e-12


def test_log_power_delta_matches_numeric_derivative():
    ell = SlowlyVarying.log_power(1.0, 0.7)
    for t in (10.0, 1e3, 1e6):
        h = 1e-5
        num = (ell.log_value(t * (1 + h)) - ell.log_value(t / (1 + h))) / (2 * math.log(1 + h))
        assert num == pytest.approx(ell.delta(t), rel=1e-6)


def test_slowly_varying_validation():
    with pytest.raises(DomainError):
        SlowlyVarying.const(-1.0)
    with pytest.raises(DomainError):
        SlowlyVarying.log_power(0.0, 1.0)


# -- x0 handling -------------------------------------------------------------

def test_auto_x0_respects_mode():
    d = WeibullLike(1.0, 0.5, 2.0)
    # raw tail increases until (alpha/(cp))^(1/p) = 16, so x0 must land beyond it
    assert d.x0 > 16.0
    assert d.tail(d.x0) <= 1.0


def test_auto_x0_pure_weibull_reaches_support_edge():
    d = WeibullLike(1.0, 3.0, 0.0)
    assert d.x0 < 1e-12
    assert d.tail(d.x0) == pytest.approx(1.0, abs=1e-15)


def test_explicit_x0_validated():
    with pytest.raises(DomainError):
        WeibullLike(1.0, 1.0, 2.0, x0=1.0)  # raw tail still increasing at 1 (mode is at 2)
    with pytest.raises(DomainError):
        LogWeibullLike(1.0, 2.0, 0.0, x0=2.0)  # below e


def test_iterated_log_tower_guard():
    assert iterated_log(exp_tower(2), 2) == pytest.approx(1.0, abs=1e-12)
    assert iterated_log(2.0, 2) == pytest.approx(math.log(math.log(2.0)), abs=1e-15)
    with pytest.raises(DomainError):
        iterated_log(0.5, 2)  # first log goes negative, second is undefined
    with pytest.raises(DomainError):
        IteratedLogScale(2, 1.0, 1.0, x0=10.0)
    with pytest.raises(DomainError):
        IteratedLogScale(1, 1.0, 1.0)


def test_generalized_von_mises_matches_exponential():
    gvm = GeneralizedVonMises(f=lambda t: 1.0, g=lambda t: 1.0, c=lambda t: 1.0, x0=0.0)
    assert gvm.log_tail(4.0) == pytest.approx(-4.0, abs=1e-12)
    assert gvm.quantile_tail(1e-4) == pytest.approx(math.log(1e4), rel=1e-10)


def test_generalized_von_mises_rejects_bad_c():
    with pytest.raises(DomainError):
        GeneralizedVonMises(f=lambda t: 1.0, g=lambda t: 1.0, c=lambda t: 2.0, x0=0.0)


# -- grammar -----------------------------------------------------------------

def test_parse_round_trip_labels():
    for s in ("exp",
              "weibull:c=1,p=2,alpha=0,ell=const:1",
              "weibull:c=0.5,p=3,alpha=-1,ell=logpow:2:0.5",
              "logweibull:c=1,p=2,alpha=1,ell=const:1",
              "iterlog:k=2,a=1,C=1"):
        assert parse_dist(s).label == s


def test_parse_rejections_name_the_field():
    cases = {
        "weibull:c=1,p=2,alpha=0": "ell",
        "weibull:c=1,p=2,alpha=0,ell=const:1,bogus=3": "bogus",
        "weibull:c=-1,p=2,alpha=0,ell=const:1": "'c'",
        "weibull:c=1,p=0,alpha=0,ell=const:1": "'p'",
        "logweibull:c=1,p=1,alpha=0,ell=const:1": "'p'",
        "weibull:c=1,p=2,alpha=0,ell=weird:1": "ell",
        "iterlog:k=1,a=1,C=1": "'k'",
        "iterlog:k=2,a=0,C=1": "'a'",
        "gumbelzilla:c=1": "gumbelzilla",
    }
    for spec, needle in cases.items():
        with pytest.raises(ParseError, match=needle):
            parse_dist(spec)


def test_parse_is_exact_about_numbers():
    with pytest.raises(ParseError):
        parse_dist("weibull:c=one,p=2,alpha=0,ell=const:1")
    with pytest.raises(ParseError):
        parse_dist("iterlog:k=2.5,a=1,C=1")
