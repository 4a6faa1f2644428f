"""OLS trend fitting with a two-sided t test.

The t distribution tail is computed from the regularized incomplete beta
function, evaluated here by its continued fraction (modified Lentz).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .degseq import DomainError

_TINY = 1e-300
_EPS = 1e-16


def _betacf(a: float, b: float, x: float) -> float:
    qab = a + b
    qap = a + 1.0
    qam = a - 1.0
    c = 1.0
    d = 1.0 - qab * x / qap
    if abs(d) < _TINY:
        d = _TINY
    d = 1.0 / d
    h = d
    for m in range(1, 10000):
        m2 = 2 * m
        aa = m * (b - m) * x / ((qam + m2) * (a + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        h *= d * c
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2))
        d = 1.0 + aa * d
        if abs(d) < _TINY:
            d = _TINY
        c = 1.0 + aa / c
        if abs(c) < _TINY:
            c = _TINY
        d = 1.0 / d
        delta = d * c
        h *= delta
        if abs(delta - 1.0) < _EPS:
            return h
    raise ArithmeticError(f"incomplete beta continued fraction did not converge (a={a}, b={b}, x={x})")


def betainc(a: float, b: float, x: float) -> float:
    """Regularized incomplete beta I_x(a, b) for a, b > 0 and 0 <= x <= 1."""
    if a <= 0 or b <= 0:
        raise DomainError("betainc needs a, b > 0")
    if not 0.0 <= x <= 1.0:
        raise DomainError("betainc needs 0 <= x <= 1")
    if x == 0.0 or x == 1.0:
        return x
    log_front = (math.lgamma(a + b) - math.lgamma(a) - math.lgamma(b)
                 + a * math.log(x) + b * math.log1p(-x))
    front = math.exp(log_front)
    if x < (a + 1.0) / (a + b + 2.0):
        return front * _betacf(a, b, x) / a
    return 1.0 - front * _betacf(b, a, 1.0 - x) / b


def t_two_sided_p(t: float, df: float) -> float:
    """P(|T| >= |t|) for Student's t with ``df`` degrees of freedom."""
    if df <= 0:
        raise DomainError("degrees of freedom must be positive")
    if math.isinf(t):
        return 0.0
    return min(1.0, betainc(df / 2.0, 0.5, df / (df + t * t)))


@dataclass(frozen=True)
class TrendResult:
    slope: float
    intercept: float
    std_err: float
    t_stat: float
    p_value: float
    series_length: int
    exact_fit: bool = False


def fit_trend(series) -> TrendResult:
    """Least-squares line through ``(time, value)`` pairs; test slope = 0.

    A series lying exactly on a line has zero residual variance: a nonzero
    slope is then reported with p = 0 and ``exact_fit`` set, a zero slope
    (constant series) with p = 1.
    """
    pts = [(float(x), float(y)) for x, y in series]
    n = len(pts)
    if n < 3:
        raise DomainError("trend fit needs at least 3 points")
    mx = math.fsum(x for x, _ in pts) / n
    my = math.fsum(y for _, y in pts) / n
    sxx = math.fsum((x - mx) ** 2 for x, _ in pts)
    if sxx == 0:
        raise DomainError("trend fit needs nonconstant time values")
    sxy = math.fsum((x - mx) * (y - my) for x, y in pts)
    syy = math.fsum((y - my) ** 2 for _, y in pts)
    slope = sxy / sxx
    intercept = my - slope * mx
    sse = math.fsum((y - intercept - slope * x) ** 2 for x, y in pts)
    df = n - 2
    if syy == 0 or sse <= 1e-24 * syy:
        if syy == 0:
            return TrendResult(0.0, my, 0.0, 0.0, 1.0, n, exact_fit=True)
        return TrendResult(slope, intercept, 0.0, math.copysign(math.inf, slope), 0.0, n, exact_fit=True)
    se = math.sqrt(sse / df / sxx)
    t = slope / se
    return TrendResult(slope, intercept, se, t, t_two_sided_p(t, df), n)
