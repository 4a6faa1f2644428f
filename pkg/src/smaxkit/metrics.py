"""Scalar graph statistics: s-metric, its normalizations, r and CV."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .degseq import DomainError, _as_degrees
from .extremal import bcd
from .graph import Graph


def s_metric(g: Graph) -> int:
    """Sum over edges of the product of endpoint degrees."""
    deg = g.degrees()
    return sum(deg[u] * deg[v] for u, v in g.edges)


def s_min_approx(D) -> float:
    """Half the sum of d_i * d_{n+1-i}: pairs largest degrees with smallest.

    Always an integer or half-integer, exact in floating point.
    """
    degs = sorted(_as_degrees(D), reverse=True)
    return sum(a * b for a, b in zip(degs, reversed(degs))) / 2


def coefficient_of_variation(D) -> float:
    """Population standard deviation over mean."""
    degs = _as_degrees(D)
    if not degs:
        raise DomainError("empty degree sequence")
    n = len(degs)
    mean = sum(degs) / n
    if mean <= 0:
        raise DomainError("coefficient of variation needs a positive mean")
    var = sum((x - mean) ** 2 for x in degs) / n
    return math.sqrt(var) / mean


def assortativity(g: Graph) -> float:
    """Degree correlation coefficient r over edge ends; NaN when undefined.

    Each edge contributes both orientations, so r is the Pearson correlation
    of a symmetric sample.
    """
    if g.m < 2:
        return math.nan
    deg = g.degrees()
    # sums over both orientations of each edge
    m2 = 2 * g.m
    s1 = s2 = sxy = 0
    for u, v in g.edges:
        a, b = deg[u], deg[v]
        s1 += a + b
        s2 += a * a + b * b
        sxy += 2 * a * b
    mean = s1 / m2
    var = s2 / m2 - mean * mean
    if var <= 1e-12 * max(1.0, mean * mean):
        return math.nan
    return (sxy / m2 - mean * mean) / var


def unique_connected_realization(D) -> bool:
    """True for star and path degree sequences.

    These are the only shapes whose connected realization is unique up to
    isomorphism, so s_min equals s_max there.
    """
    degs = sorted(_as_degrees(D), reverse=True)
    n = len(degs)
    if n < 2:
        return False
    star = degs[0] == n - 1 and all(x == 1 for x in degs[1:])
    path = degs[-2:] == [1, 1] and all(x == 2 for x in degs[:-2])
    return star or path


@dataclass
class SMetricReport:
    n: int
    m: int
    s: int
    s_min_approx: float
    s_max_approx: int
    S_ratio: float
    S_normalized: float
    cv: float
    r: float
    degenerate: bool

    HEADER = "n,m,s,smin_approx,smax_approx,S_ratio,S_norm,cv,r,degenerate"

    def csv_row(self) -> str:
        return ",".join([
            str(self.n), str(self.m), str(self.s), _fmt(self.s_min_approx),
            str(self.s_max_approx), _fmt(self.S_ratio), _fmt(self.S_normalized),
            _fmt(self.cv), _fmt(self.r), str(int(self.degenerate)),
        ])


def _fmt(x: float) -> str:
    if isinstance(x, float) and math.isnan(x):
        return "nan"
    return repr(float(x))


def s_report(g: Graph) -> SMetricReport:
    """Full s-metric report, normalizing by the greedy s_max proxy.

    Connected graphs whose degree sequence is a star or a path are their own
    extremal graphs; they are reported with s_max = s and the degenerate flag
    set.  The same flag is raised whenever the proxy equals the lower bound.
    """
    D = g.degree_sequence()
    s = s_metric(g)
    lo = s_min_approx(D)
    degenerate = g.is_connected() and unique_connected_realization(D)
    hi = s if degenerate else s_metric(bcd(D))
    if hi == lo:
        degenerate = True
    ratio = s / hi if hi else 1.0
    norm = 1.0 if degenerate else (s - lo) / (hi - lo)
    try:
        cv = coefficient_of_variation(D)
    except DomainError:
        cv = math.nan
    return SMetricReport(g.n, g.m, s, lo, hi, ratio, norm, cv, assortativity(g), degenerate)
