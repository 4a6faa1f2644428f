"""Incremental phi updates and the greedy near-s_max construction.

``drop`` updates (sigma, phi) in O(d) when one node's degree falls by one.
``bcd`` uses it to build a high-s realization of a degree sequence edge by
edge, checking graphicality of the residual sequence at every step without
re-sorting anything.  ``exact_extrema`` is an exhaustive oracle for small
instances.
"""

from __future__ import annotations

import bisect
import itertools
from dataclasses import dataclass, field

from .degseq import DomainError, _as_degrees, build_phi, erdos_gallai_violation, revcdf
from .graph import Graph


class NotGraphicalError(DomainError):
    """The degree sequence has no simple-graph realization."""


class ConstructionError(RuntimeError):
    """The greedy construction stranded stubs on a graphical input."""


def drop(sigma: list[int], phi: list[int], m: int) -> None:
    """Lower one node from degree ``d - m + 1`` to ``d - m``, in place.

    ``m`` is the 1-based histogram index; ``d = len(sigma)``.
    """
    d = len(sigma)
    if not 1 <= m <= d:
        raise DomainError(f"histogram index {m} outside 1..{d}")
    s = sigma[m - 1]
    below = sigma[m - 2] if m > 1 else 0
    if s <= below:
        raise DomainError(f"no node has degree {d - m + 1}")
    # first j with sigma_j > d - m
    first = bisect.bisect_right(sigma, d - m) + 1
    for j in range(first, m):
        phi[j - 1] -= 1
    delta = (d - m + 1) - 2 * (s - 1) + min(s - 1, d - m)
    ell = min(d - s + 1, d)
    if m < ell:
        delta -= sigma[ell - 1] - s
    phi[m - 1] += delta
    for j in range(m, d):
        phi[j] += 1
    sigma[m - 1] = s - 1


def drop_delta(sigma, m: int) -> list[int]:
    """The vector added to phi by ``drop`` at index ``m``, computed termwise.

    Written independently of ``drop``: case split on j < m, j = m, j > m with
    an explicit indicator, for use in diagnostics and tests.
    """
    d = len(sigma)
    k = m
    s_k = sigma[k - 1]

    def sig(i):
        if i <= 0:
            return 0
        if i > d:
            return sigma[-1]
        return sigma[i - 1]

    out = []
    for j in range(1, d + 1):
        if j < k:
            out.append(-1 if k + sigma[j - 1] > d else 0)
        elif j == k:
            out.append((d - k + 1) - 2 * (s_k - 1) + min(s_k - 1, d - k)
                       - max(0, sig(d - s_k + 1) - s_k))
        else:
            out.append(1)
    return out


@dataclass
class WorkingState:
    """Decaying degree sequence with its histogram and phi vector.

    ``d`` is frozen at the initial maximum so sigma and phi keep their
    length while degrees fall.
    """

    node_degrees: list[int]
    sigma: list[int]
    phi: list[int]
    d: int

    @classmethod
    def from_degrees(cls, degrees) -> "WorkingState":
        degs = _as_degrees(degrees)
        d = max(degs)
        sigma = list(revcdf(degs, d).sigma)
        return cls(degs, sigma, build_phi(sigma), d)

    def index_of(self, node: int) -> int:
        return self.d - self.node_degrees[node] + 1

    def drop(self, m: int) -> "WorkingState":
        """New state with one node of histogram index ``m`` lowered."""
        target = self.d - m + 1
        try:
            node = self.node_degrees.index(target)
        except ValueError:
            raise DomainError(f"no node has degree {target}") from None
        return self.drop_node(node)

    def drop_node(self, node: int) -> "WorkingState":
        sigma, phi = self.sigma[:], self.phi[:]
        drop(sigma, phi, self.index_of(node))
        degs = self.node_degrees[:]
        degs[node] -= 1
        return WorkingState(degs, sigma, phi, self.d)

    def graphical(self) -> bool:
        return min(self.phi) >= 0


@dataclass
class BCDResult:
    graph: Graph
    accepted: int
    rejections: int
    stranded: dict[int, int] = field(default_factory=dict)


def _diagnose(degs: list[int]) -> str:
    if any(x < 0 for x in degs):
        return "negative degree"
    if sum(degs) % 2:
        return "odd degree sum"
    k = erdos_gallai_violation(degs)
    return f"Erdos-Gallai inequality fails at k={k}"


def construct(D) -> BCDResult:
    """Greedy high-degree-first realization of ``D`` with statistics.

    Node ``i`` of the result carries the ``i``-th largest degree.  Nodes are
    completed one at a time in that order; partners are tried in
    nonincreasing remaining degree (ties to the lower id) and an edge is kept
    only if the residual phi vector stays nonnegative.
    """
    degs = sorted(_as_degrees(D), reverse=True)
    n = len(degs)
    if n == 0 or any(x < 0 for x in degs):
        raise NotGraphicalError("empty sequence or negative degree")
    total = sum(degs)
    if total == 0:
        return BCDResult(Graph(n, []), 0, 0)
    if total % 2:
        raise NotGraphicalError(f"not graphical: {_diagnose(degs)}")
    d = degs[0]
    sigma = list(revcdf(degs).sigma)
    phi = build_phi(sigma)
    if min(phi) < 0:
        raise NotGraphicalError(f"not graphical: {_diagnose(degs)}")

    rem = degs[:]
    buckets: list[list[int]] = [[] for _ in range(d + 1)]
    for v in range(n):
        if rem[v] > 0:
            buckets[rem[v]].append(v)

    def lower(v):
        k = rem[v]
        b = buckets[k]
        del b[bisect.bisect_left(b, v)]
        rem[v] = k - 1
        if k > 1:
            bisect.insort(buckets[k - 1], v)

    adj: list[set[int]] = [set() for _ in range(n)]
    edges = []
    rejections = 0
    for n1 in range(n):
        if rem[n1] == 0:
            continue
        linked = adj[n1]
        scan = (v for k in range(d, 0, -1) for v in list(buckets[k]))
        while rem[n1] > 0:
            for c in scan:
                if c != n1 and c not in linked:
                    break
            else:
                break
            s2, p2 = sigma[:], phi[:]
            drop(s2, p2, d - rem[n1] + 1)
            drop(s2, p2, d - rem[c] + 1)
            if min(p2) >= 0:
                sigma, phi = s2, p2
                edges.append((n1, c))
                linked.add(c)
                adj[c].add(n1)
                lower(n1)
                lower(c)
            else:
                rejections += 1
    stranded = {v: r for v, r in enumerate(rem) if r}
    result = BCDResult(Graph(n, edges), len(edges), rejections, stranded)
    if stranded:
        raise ConstructionError(f"stubs left unmatched: {stranded}")
    return result


def bcd(D) -> Graph:
    """Near-s_max realization of a graphical degree sequence."""
    return construct(D).graph


@dataclass
class Extrema:
    s_min: int
    s_max: int
    arg_min: Graph
    arg_max: Graph
    count: int


MAX_ORACLE_NODES = 10
MAX_ORACLE_DEGREE_SUM = 24


def exact_extrema(D, connected_only: bool = False) -> Extrema:
    """Exhaustive min/max of the s-metric over labeled realizations of ``D``.

    Refuses instances with more than 10 nodes or a degree sum above 24.
    """
    degs = sorted(_as_degrees(D), reverse=True)
    n = len(degs)
    total = sum(degs)
    if n > MAX_ORACLE_NODES or total > MAX_ORACLE_DEGREE_SUM:
        raise DomainError(
            f"instance too large for exhaustive search: n={n}, sum={total} "
            f"(limits n<={MAX_ORACLE_NODES}, sum<={MAX_ORACLE_DEGREE_SUM})")
    if n == 0 or total % 2 or any(x < 0 for x in degs):
        raise NotGraphicalError("no realization")

    rem = degs[:]
    edges: list[tuple[int, int]] = []
    best = {"min": None, "max": None, "count": 0}

    def connected() -> bool:
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for u, v in edges:
            parent[find(u)] = find(v)
        return len({find(x) for x in range(n)}) == 1

    def visit(u: int, s: int):
        while u < n and rem[u] == 0:
            u += 1
        if u == n:
            if connected_only and not connected():
                return
            best["count"] += 1
            if best["min"] is None or s < best["min"][0]:
                best["min"] = (s, edges[:])
            if best["max"] is None or s > best["max"][0]:
                best["max"] = (s, edges[:])
            return
        k = rem[u]
        pool = [v for v in range(u + 1, n) if rem[v] > 0]
        if len(pool) < k:
            return
        rem[u] = 0
        for chosen in itertools.combinations(pool, k):
            gain = 0
            for v in chosen:
                rem[v] -= 1
                edges.append((u, v))
                gain += degs[u] * degs[v]
            visit(u + 1, s + gain)
            for v in chosen:
                rem[v] += 1
                edges.pop()
        rem[u] = k

    visit(0, 0)
    if best["count"] == 0:
        what = "connected realization" if connected_only else "realization"
        raise NotGraphicalError(f"no {what} of {tuple(degs)}")
    (lo, lo_e), (hi, hi_e) = best["min"], best["max"]
    return Extrema(lo, hi, Graph(n, lo_e), Graph(n, hi_e), best["count"])
