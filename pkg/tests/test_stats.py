import math

import mpmath
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from oracles import ols_t_test
from smaxkit.degseq import DomainError
from smaxkit.stats import betainc, fit_trend, t_two_sided_p


@settings(max_examples=300, deadline=None)
@given(st.floats(0.05, 60), st.floats(0.05, 60), st.floats(0, 1))
def test_betainc_matches_mpmath(a, b, x):
    want = float(mpmath.betainc(a, b, 0, x, regularized=True))
    got = betainc(a, b, x)
    assert got == pytest.approx(want, rel=1e-10, abs=1e-300)


def test_betainc_edges_and_domain():
    assert betainc(2, 3, 0.0) == 0.0 and betainc(2, 3, 1.0) == 1.0
    assert betainc(1, 1, 0.3) == pytest.approx(0.3, rel=1e-14)
    with pytest.raises(DomainError):
        betainc(0, 1, 0.5)
    with pytest.raises(DomainError):
        betainc(1, 1, 1.5)


@pytest.mark.parametrize("t, df", [(0.0, 3), (1.0, 1), (2.5, 7), (-4.0, 20), (12.0, 2)])
def test_t_p_matches_mpmath(t, df):
    # P(|T| >= |t|) = I_{df/(df+t^2)}(df/2, 1/2)
    want = float(mpmath.betainc(df / 2, 0.5, 0, mpmath.mpf(df) / (df + t * t), regularized=True))
    assert t_two_sided_p(t, df) == pytest.approx(want, rel=1e-10)


def test_textbook_series():
    r = fit_trend(list(zip(range(1, 6), (2, 4, 5, 4, 5))))
    assert r.slope == pytest.approx(0.6, rel=1e-12)
    assert r.intercept == pytest.approx(2.2, rel=1e-12)
    assert r.std_err == pytest.approx(0.28284271247461895, rel=1e-12)
    assert r.p_value == pytest.approx(0.12402706265755463, rel=1e-9)
    assert r.series_length == 5 and not r.exact_fit


def test_exact_fit_and_constant():
    r = fit_trend([(0, 0), (1, 1), (2, 2)])
    assert r.slope == 1.0 and r.exact_fit and r.p_value == 0.0 and r.t_stat == math.inf
    r = fit_trend([(0, 1), (1, 1), (2, 1)])
    assert r.slope == 0.0 and r.p_value == 1.0


def test_fit_errors():
    with pytest.raises(DomainError):
        fit_trend([(0, 1), (1, 2)])
    with pytest.raises(DomainError):
        fit_trend([(1, 1), (1, 2), (1, 3)])


@settings(max_examples=100, deadline=None)
@given(st.lists(st.floats(-1e3, 1e3), min_size=3, max_size=30))
def test_fit_matches_oracle(ys):
    # the lstsq oracle itself breaks down on (numerically) constant series
    assume(max(ys) - min(ys) > 1e-9 * max(1.0, max(abs(y) for y in ys)))
    xs = list(range(len(ys)))
    r = fit_trend(zip(xs, ys))
    if r.exact_fit:
        return
    slope, intercept, se, t, p = ols_t_test(xs, ys)
    assert r.slope == pytest.approx(slope, rel=1e-9, abs=1e-9)
    assert r.std_err == pytest.approx(se, rel=1e-9, abs=1e-12)
    assert r.p_value == pytest.approx(p, rel=1e-9, abs=1e-12)
    assert 0.0 <= r.p_value <= 1.0
