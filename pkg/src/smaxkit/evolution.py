"""Preferential attachment measured on sliding windows of a temporal edge list.

For times T0 < T1 < T2, the *existing* graph is built from records with
T0 <= t <= T1 and the records with T1 < t <= T2 are the *new* edges.  A new
edge is external when it joins a new node to an existing one, internal when
it joins two existing nodes that were not yet linked.  Edges between two
new nodes feed neither estimator and are only counted.

Relative probabilities are estimated per degree k (external) or per degree
product k1*k2 (internal) as R = (m_key / m) / (n_key / n).

Cutoffs never re-estimate R: the global estimates are kept and the variance
is taken over the units (nodes, or unlinked pairs) at or below the cutoff.
"""

from __future__ import annotations

import csv
import io
import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from .degseq import DomainError
from .graph import Graph
from .parallel import worker_count
from .stats import TrendResult, fit_trend

__all__ = [
    "TemporalEdgeList", "WindowSnapshot", "RelProb", "TrendResult",
    "snapshot", "estimate_external", "estimate_internal", "unlinked_pair_counts",
    "log_bin", "bin_of", "bin_bounds", "variance_R", "partial_sums",
    "loglog_slope", "fit_trend", "sliding_analysis", "SlidingResult",
]


@dataclass
class TemporalEdgeList:
    """Deduplicated ``(t, u, v)`` records over dense node ids, ``u < v``.

    ``labels[i]`` is the external id of node ``i``.  Self-loops are dropped
    on ingestion and repeated ``(t, u, v)`` records collapse to one.
    """

    records: list[tuple[int, int, int]]
    labels: list[str] = field(default_factory=list)

    @classmethod
    def from_records(cls, rows) -> "TemporalEdgeList":
        ids: dict[str, int] = {}
        seen = set()
        for t, a, b in rows:
            a, b = str(a), str(b)
            u = ids.setdefault(a, len(ids))
            v = ids.setdefault(b, len(ids))
            if u == v:
                continue
            seen.add((int(t), min(u, v), max(u, v)))
        labels = [None] * len(ids)
        for k, i in ids.items():
            labels[i] = k
        return cls(sorted(seen), labels)

    @classmethod
    def from_csv(cls, text: str) -> "TemporalEdgeList":
        """Read a ``t,u,v`` CSV; ``#`` lines are comments."""
        lines = [ln for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
        reader = csv.reader(lines)
        header = next(reader, None)
        if header is None or [h.strip() for h in header] != ["t", "u", "v"]:
            raise DomainError("temporal CSV must start with header 't,u,v'")
        rows = []
        for lineno, row in enumerate(reader, start=2):
            if len(row) != 3:
                raise DomainError(f"row {lineno}: expected 3 fields, got {len(row)}")
            try:
                t = int(row[0])
            except ValueError:
                raise DomainError(f"row {lineno}: time {row[0]!r} is not an integer") from None
            rows.append((t, row[1].strip(), row[2].strip()))
        return cls.from_records(rows)

    @property
    def num_nodes(self) -> int:
        return len(self.labels)

    def time_range(self) -> tuple[int, int]:
        if not self.records:
            raise DomainError("no records")
        return self.records[0][0], self.records[-1][0]


@dataclass
class WindowSnapshot:
    """Existing graph over local ids ``0..N-1`` plus the classified new edges.

    ``node_ids[i]`` is the global id of local node ``i``.  External edges are
    ``(local existing node, global new node)``; internal edges are pairs of
    local ids.
    """

    existing: Graph
    node_ids: list[int]
    external: list[tuple[int, int]]
    internal: list[tuple[int, int]]
    bounds: tuple[int, int, int]
    diagnostics: dict[str, int]


def snapshot(tel: TemporalEdgeList, T0: int, T1: int, T2: int,
             largest_component: bool = True) -> WindowSnapshot:
    if not T0 < T1 < T2:
        raise DomainError(f"need T0 < T1 < T2, got {T0}, {T1}, {T2}")
    old = set()
    fresh = set()
    for t, u, v in tel.records:
        if T0 <= t <= T1:
            old.add((u, v))
        elif T1 < t <= T2:
            fresh.add((u, v))
    if not old:
        raise DomainError(f"no records in existing interval [{T0}, {T1}]")
    present = sorted({x for e in old for x in e})
    local = {g: i for i, g in enumerate(present)}
    graph = Graph(len(present), sorted((local[u], local[v]) for u, v in old))
    diag = Counter(new_new=0, outside_component=0, repeated=0, dropped_nodes=0)
    if largest_component:
        comps = graph.components()
        keep = max(comps, key=len)
        diag["dropped_nodes"] = graph.n - len(keep)
        if len(keep) < graph.n:
            sub = {old_i: i for i, old_i in enumerate(keep)}
            graph = Graph(len(keep), sorted((sub[u], sub[v]) for u, v in graph.edges
                                            if u in sub and v in sub))
            present = [present[i] for i in keep]
            local = {g: i for i, g in enumerate(present)}
    existing_all = set(x for e in old for x in e)
    linked = set(graph.edges)
    external, internal = [], []
    for u, v in sorted(fresh):
        eu, ev = u in existing_all, v in existing_all
        if not eu and not ev:
            diag["new_new"] += 1
        elif eu and ev:
            if u not in local or v not in local:
                diag["outside_component"] += 1
                continue
            a, b = local[u], local[v]
            if (min(a, b), max(a, b)) in linked:
                diag["repeated"] += 1
            else:
                internal.append((min(a, b), max(a, b)))
        else:
            old_end, new_end = (u, v) if eu else (v, u)
            if old_end not in local:
                diag["outside_component"] += 1
            else:
                external.append((local[old_end], new_end))
    return WindowSnapshot(graph, present, external, internal, (T0, T1, T2), dict(diag))


@dataclass
class RelProb:
    """Relative-probability estimates keyed by degree (or degree product).

    ``per_key[k] = (R_k, m_k, n_k)``.  ``empty`` is set when the estimator
    had nothing to count (no new edges, or no unlinked pairs); ``per_key``
    is then empty too.
    """

    kind: str
    per_key: dict[int, tuple[float, int, int]]
    m: int
    n: int
    empty: bool = False
    binned: dict[int, tuple[float, int, int]] = field(default_factory=dict)

    def exact(self, key: int) -> Fraction:
        _, mk, nk = self.per_key[key]
        return Fraction(mk * self.n, self.m * nk)


def _relprob(kind, m_counts, n_counts, m, n) -> RelProb:
    if m == 0 or n == 0:
        return RelProb(kind, {}, m, n, empty=True)
    per = {k: (m_counts.get(k, 0) * n / (m * nk), m_counts.get(k, 0), nk)
           for k, nk in sorted(n_counts.items()) if nk > 0}
    return RelProb(kind, per, m, n)


def estimate_external(ws: WindowSnapshot) -> RelProb:
    deg = ws.existing.degrees()
    n_counts = Counter(deg)
    m_counts = Counter(deg[x] for x, _ in ws.external)
    return _relprob("external", m_counts, n_counts, len(ws.external), ws.existing.n)


def unlinked_pair_counts(ws: WindowSnapshot) -> dict[tuple[int, int], int]:
    """Unlinked existing pairs per degree pair ``(k1 <= k2)``, from the histogram."""
    deg = ws.existing.degrees()
    hist = sorted(Counter(deg).items())
    out: dict[tuple[int, int], int] = {}
    for i, (k1, c1) in enumerate(hist):
        out[(k1, k1)] = c1 * (c1 - 1) // 2
        for k2, c2 in hist[i + 1:]:
            out[(k1, k2)] = c1 * c2
    for u, v in ws.existing.edges:
        a, b = sorted((deg[u], deg[v]))
        out[(a, b)] -= 1
    return {k: c for k, c in out.items() if c > 0}


def estimate_internal(ws: WindowSnapshot) -> RelProb:
    deg = ws.existing.degrees()
    n_counts: Counter = Counter()
    for (k1, k2), c in unlinked_pair_counts(ws).items():
        n_counts[k1 * k2] += c
    m_counts = Counter(deg[a] * deg[b] for a, b in ws.internal)
    N = ws.existing.n
    n = N * (N - 1) // 2 - ws.existing.m
    return _relprob("internal", m_counts, n_counts, len(ws.internal), n)


def bin_of(k: int) -> int:
    """Bin 0 is {1}; bin b >= 1 covers 2**(b-1) < k <= 2**b."""
    if k < 1:
        raise DomainError("keys start at 1")
    return (k - 1).bit_length()


def bin_bounds(b: int) -> tuple[int, int]:
    return (1, 1) if b == 0 else (2 ** (b - 1) + 1, 2 ** b)


def log_bin(rp: RelProb) -> RelProb:
    """Copy of ``rp`` with ``binned[b] = (R_b, m_b, n_b)`` over logarithmic bins."""
    ms: Counter = Counter()
    ns: Counter = Counter()
    for k, (_, mk, nk) in rp.per_key.items():
        b = bin_of(k)
        ms[b] += mk
        ns[b] += nk
    binned = {}
    if not rp.empty:
        binned = {b: (ms[b] * rp.n / (rp.m * ns[b]), ms[b], ns[b]) for b in sorted(ns)}
    return RelProb(rp.kind, dict(rp.per_key), rp.m, rp.n, rp.empty, binned)


def variance_R(rp: RelProb, cutoff: int | None = None) -> float:
    """Population variance of R over units whose key is at most ``cutoff``."""
    items = [(R, nk) for k, (R, _, nk) in rp.per_key.items() if cutoff is None or k <= cutoff]
    weight = sum(nk for _, nk in items)
    if weight == 0:
        raise DomainError("no units left after cutoff")
    mean = math.fsum(R * nk for R, nk in items) / weight
    return math.fsum(nk * (R - mean) ** 2 for R, nk in items) / weight


def partial_sums(rp: RelProb) -> dict[int, float]:
    """S_K = sum of R_k over k <= K, at every key K present."""
    out = {}
    acc = 0.0
    for k in sorted(rp.per_key):
        acc += rp.per_key[k][0]
        out[k] = acc
    return out


def loglog_slope(sums: dict[int, float], max_key: int | None = None) -> TrendResult:
    """OLS fit of log S_K against log K over positive sums."""
    pts = [(math.log(k), math.log(s)) for k, s in sorted(sums.items())
           if s > 0 and (max_key is None or k <= max_key)]
    return fit_trend(pts)


@dataclass
class SlidingResult:
    series: list[tuple[int, int, int | None, str, float | None]]
    trends: list[tuple[str, int | None, TrendResult | None]]

    def series_csv(self) -> str:
        buf = io.StringIO()
        buf.write("window_start,window_end,cutoff,kind,variance\n")
        for T0, T1, cut, kind, var in self.series:
            buf.write(f"{T0},{T1},{_cut(cut)},{kind},{'' if var is None else repr(var)}\n")
        return buf.getvalue()

    def trends_csv(self) -> str:
        buf = io.StringIO()
        buf.write("kind,cutoff,slope,stderr,t,p\n")
        for kind, cut, tr in self.trends:
            if tr is None:
                buf.write(f"{kind},{_cut(cut)},,,,\n")
            else:
                buf.write(f"{kind},{_cut(cut)},{tr.slope!r},{tr.std_err!r},{tr.t_stat!r},{tr.p_value!r}\n")
        return buf.getvalue()


def _cut(c):
    return "none" if c is None else str(c)


DEFAULT_EXTERNAL_CUTOFFS = (None, 2 ** 6, 2 ** 4)
DEFAULT_INTERNAL_CUTOFFS = (None, 2 ** 13, 2 ** 9)

_shared: dict = {}


def _window(args):
    tel = _shared["tel"]
    T0, T1, T2, ext_cuts, int_cuts, lcc = args
    rows = []
    try:
        ws = snapshot(tel, T0, T1, T2, largest_component=lcc)
        estimates = {"external": estimate_external(ws), "internal": estimate_internal(ws)}
    except DomainError:
        estimates = {}
    for kind, cuts in (("external", ext_cuts), ("internal", int_cuts)):
        rp = estimates.get(kind)
        for c in cuts:
            var = None
            if rp is not None and not rp.empty:
                try:
                    var = variance_R(rp, c)
                except DomainError:
                    var = None
            rows.append((T0, T1, c, kind, var))
    return rows


def _init_worker(tel):
    _shared["tel"] = tel


def sliding_analysis(tel: TemporalEdgeList, window_len: int, step: int,
                     external_cutoffs=DEFAULT_EXTERNAL_CUTOFFS,
                     internal_cutoffs=DEFAULT_INTERNAL_CUTOFFS,
                     largest_component: bool = True,
                     workers: int | None = None) -> SlidingResult:
    """Variance-of-R time series over sliding windows, with a trend test per series.

    The existing interval is ``[T0, T0 + window_len - 1]`` and the new
    interval the following ``step`` time units; ``T0`` advances by ``step``.
    Windows whose estimate cannot be formed leave a gap (variance None).
    """
    if window_len < 1 or step < 1:
        raise DomainError("window length and step must be positive")
    lo, hi = tel.time_range()
    if hi - lo + 1 < window_len + step:
        raise DomainError(f"data span {hi - lo + 1} shorter than window + step = {window_len + step}")
    tasks = []
    T0 = lo
    while T0 + window_len - 1 + step <= hi:
        T1 = T0 + window_len - 1
        tasks.append((T0, T1, T1 + step, tuple(external_cutoffs), tuple(internal_cutoffs),
                      largest_component))
        T0 += step
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(tasks) < 2:
        _init_worker(tel)
        chunks = [_window(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers, initializer=_init_worker, initargs=(tel,)) as pool:
            chunks = list(pool.map(_window, tasks))
    series = [row for chunk in chunks for row in chunk]
    trends = []
    for kind, cuts in (("external", external_cutoffs), ("internal", internal_cutoffs)):
        for c in cuts:
            pts = [(r[0], r[4]) for r in series if r[3] == kind and r[2] == c and r[4] is not None]
            try:
                trends.append((kind, c, fit_trend(pts)))
            except DomainError:
                trends.append((kind, c, None))
    return SlidingResult(series, trends)
