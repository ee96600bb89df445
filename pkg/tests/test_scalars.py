import math
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from hnbounds import CertificationError, Scalar, log_scalar
from hnbounds.scalars import (
    exp_interval,
    log_ball_volume,
    log_factorial,
    log_gamma,
    log_pi,
    scalar_max,
    scalar_min,
    sqrt_interval,
)

fractions = st.fractions(min_value=-100, max_value=100, max_denominator=64)


def test_rational_mode_is_exact():
    a = Scalar.exact(Fraction(1, 3))
    b = Scalar.exact(Fraction(1, 6))
    assert (a + b).as_fraction() == Fraction(1, 2)
    assert (a - b).as_fraction() == Fraction(1, 6)
    assert (a * b).as_fraction() == Fraction(1, 18)
    assert (a / b).as_fraction() == 2


@given(fractions, fractions)
def test_rational_arithmetic_matches_fractions(x, y):
    a, b = Scalar.exact(x), Scalar.exact(y)
    assert (a + b).as_fraction() == x + y
    assert (a * b).as_fraction() == x * y
    if y != 0:
        assert (a / b).as_fraction() == x / y


@given(st.integers(min_value=1, max_value=10**6), st.integers(min_value=1, max_value=10**6))
def test_log_contains_true_value(p, q):
    s = log_scalar(Fraction(p, q))
    lo, hi = s.bounds()
    assert lo <= hi
    # float log sits well inside a certified enclosure of width ~1e-36
    assert float(lo) - 1e-9 <= math.log(p / q) <= float(hi) + 1e-9
    assert s.width() < Fraction(1, 10**20)


def test_interval_width_reported():
    s = log_scalar(2)
    assert 0 < s.width() < Fraction(1, 10**30)
    assert Scalar.exact(5).width() == 0


def test_mixed_arithmetic_promotes():
    x = Scalar.exact(Fraction(3, 2)) + log_scalar(2)
    lo, hi = x.bounds()
    assert lo < hi
    assert abs(x.midpoint() - (1.5 + math.log(2))) < 1e-15


def test_certified_comparisons():
    assert log_scalar(2) < log_scalar(3)
    assert log_scalar(3) > Scalar.exact(1)
    with pytest.raises(CertificationError):
        _ = log_scalar(2) < log_scalar(2)  # overlapping, not point-equal
    assert Scalar.exact(2) == Scalar.exact(2)
    assert not Scalar.exact(2) == Scalar.exact(3)


def test_division_by_straddling_zero_refused():
    straddle = log_scalar(2) - log_scalar(2)
    with pytest.raises(CertificationError):
        Scalar.exact(1) / straddle


def test_max0_and_abs_interval_extensions():
    assert Scalar.exact(-3).max0().as_fraction() == 0
    assert Scalar.exact(3).max0().as_fraction() == 3
    neg = Scalar.exact(0) - log_scalar(2)
    assert neg.max0().bounds()[0] == 0
    assert abs(neg).midpoint() == pytest.approx(math.log(2))
    straddle = log_scalar(2) - log_scalar(2)
    a = abs(straddle)
    assert a.bounds()[0] >= 0


def test_min_max():
    a, b = Scalar.exact(1), log_scalar(2)
    assert scalar_max(a, b).bounds()[0] >= Fraction(1)
    assert scalar_min(a, b).bounds()[1] <= Fraction(1)


def test_special_values():
    assert log_factorial(5).midpoint() == pytest.approx(math.log(120))
    assert log_gamma(Fraction(7, 2)).midpoint() == pytest.approx(math.lgamma(3.5))
    assert log_ball_volume(2).midpoint() == pytest.approx(math.log(math.pi))
    assert log_ball_volume(3).midpoint() == pytest.approx(math.log(4 * math.pi / 3))
    assert log_pi().midpoint() == pytest.approx(math.log(math.pi))
    assert sqrt_interval(Scalar.exact(2)).midpoint() == pytest.approx(math.sqrt(2))
    assert exp_interval(Scalar.exact(1)).midpoint() == pytest.approx(math.e)


def test_loggamma_agrees_with_exact_factorial_route():
    # two certified routes to ln(n!): interval loggamma(n+1) and the exact
    # integer factorial followed by an interval log; enclosures must overlap
    for n in (2, 5, 50, 500):
        a = log_gamma(n + 1)
        b = log_factorial(n)
        alo, ahi = a.bounds()
        blo, bhi = b.bounds()
        assert max(alo, blo) <= min(ahi, bhi)
        assert a.width() < Fraction(1, 10**20) and b.width() < Fraction(1, 10**20)


def test_json_round_trip():
    r = Scalar.exact(Fraction(-7, 3))
    assert Scalar.from_json(r.to_json()).as_fraction() == Fraction(-7, 3)
    s = log_scalar(2)
    back = Scalar.from_json(s.to_json())
    assert back.bounds()[0] <= s.bounds()[0] <= s.bounds()[1] <= back.bounds()[1]


def test_pickle_round_trip():
    import pickle

    for s in (Scalar.exact(Fraction(2, 7)), log_scalar(5)):
        t = pickle.loads(pickle.dumps(s))
        assert t.bounds() == s.bounds()
