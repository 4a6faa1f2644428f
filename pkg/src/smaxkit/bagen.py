"""Barabasi-Albert trees with attachment kernel k**gamma, and sweeps over them.

Randomness comes from numpy ``SeedSequence`` streams.  A sweep cell's seed
is derived from (master seed, size, gamma, sample index), so any row can be
regenerated on its own and cells can run in any order or process.
"""

from __future__ import annotations

import math
import struct
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .graph import Graph
from .metrics import coefficient_of_variation, s_metric, s_min_approx, unique_connected_realization
from .extremal import bcd
from .parallel import worker_count


@dataclass(frozen=True)
class BAConfig:
    n: int
    gamma: float
    seed: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("a BA tree needs at least 2 nodes")
        if not math.isfinite(self.gamma):
            raise ValueError("gamma must be finite")


def _attach_targets(deg: np.ndarray, t: int, gamma: float, u: float) -> int:
    w = deg[:t] ** gamma
    cum = np.cumsum(w)
    i = int(np.searchsorted(cum, u * cum[-1], side="right"))
    return min(i, t - 1)


def generate_ba_tree(cfg: BAConfig) -> Graph:
    """Grow a tree: node t joins an earlier node i with weight k_i**gamma.

    Node 1 always joins node 0 (node 0 has degree 0 beforehand, where
    0**gamma is not usable for gamma <= 0).
    """
    rng = np.random.default_rng(cfg.seed)
    n = cfg.n
    deg = np.zeros(n, dtype=np.float64)
    edges = [(0, 1)]
    deg[0] = deg[1] = 1
    if n > 2:
        draws = rng.random(n - 2)
        for t in range(2, n):
            i = _attach_targets(deg, t, cfg.gamma, draws[t - 2])
            edges.append((i, t))
            deg[i] += 1
            deg[t] = 1
    return Graph(n, edges)


def star_probability(n: int, gamma: float) -> float:
    """Probability that a BA tree on n nodes is a star.

    While the tree is a star on i nodes, the newcomer picks the hub with
    probability (i-1)**gamma / ((i-1)**gamma + (i-1)).
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    p = 1.0
    for i in range(3, n):
        p /= 1.0 + (i - 1) ** (1.0 - gamma)
    return p


def chain_probability(n: int, gamma: float) -> float:
    """Product over i = 3..n-1 of 1 / (1 + (i-2) * 2**(-1-gamma)).

    This is the probability of growing a path when the attachment kernel is
    k**(-gamma): interior nodes weigh 2**(-gamma) against 1 for each of the
    two ends.  Under kernel k**gamma itself, pass ``-gamma``.
    """
    if n < 3:
        raise ValueError("n must be at least 3")
    p = 1.0
    for i in range(3, n):
        p /= 1.0 + (i - 2) * 2.0 ** (-1.0 - gamma)
    return p


def is_star(g: Graph) -> bool:
    return g.n >= 2 and max(g.degrees()) == g.n - 1


def is_chain(g: Graph) -> bool:
    return max(g.degrees()) <= 2 and g.is_connected()


def _gamma_key(gamma: float) -> int:
    return struct.unpack("<Q", struct.pack("<d", float(gamma)))[0]


def cell_seed(seed: int, n: int, gamma: float, sample: int) -> int:
    """64-bit seed of one sweep cell."""
    ss = np.random.SeedSequence(seed, spawn_key=(n, _gamma_key(gamma), sample))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


@dataclass(frozen=True)
class SweepRow:
    n: int
    gamma: float
    seed: int
    cv: float
    s: int
    s_min_approx: float
    s_max_approx: int
    S_ratio: float
    degenerate: bool

    HEADER = "n,gamma,seed,cv,s,smin_approx,smax_approx,S_ratio,degenerate"

    def csv_row(self) -> str:
        return (f"{self.n},{self.gamma!r},{self.seed},{self.cv!r},{self.s},"
                f"{self.s_min_approx!r},{self.s_max_approx},{self.S_ratio!r},"
                f"{int(self.degenerate)}")


def sweep_cell(n: int, gamma: float, seed: int) -> SweepRow:
    g = generate_ba_tree(BAConfig(n, gamma, seed))
    D = g.degree_sequence()
    s = s_metric(g)
    # trees are connected: star and path sequences are their own extremes
    degenerate = unique_connected_realization(D)
    hi = s if degenerate else s_metric(bcd(D))
    return SweepRow(n, float(gamma), seed, coefficient_of_variation(D), s,
                    s_min_approx(D), hi, s / hi, degenerate)


def _run_cell(args):
    return sweep_cell(*args)


def log_gamma_grid(lo: float, hi: float, count: int, center: float = 1.0) -> list[float]:
    """Gammas spaced logarithmically in distance from ``center``, both sides.

    Returns ``count`` points on each side of ``center`` plus ``center``
    itself, reaching ``lo`` and ``hi``.
    """
    out = {center}
    for edge in (lo, hi):
        span = abs(edge - center)
        if span == 0:
            continue
        sign = 1 if edge > center else -1
        for x in np.geomspace(span / 2 ** (count - 1), span, count):
            out.add(round(center + sign * float(x), 12))
    return sorted(out)


def sweep(sizes, gammas, samples_per_cell: int, seed: int, workers: int | None = None) -> list[SweepRow]:
    """One row per (size, gamma, sample), ordered by that key."""
    for n in sizes:
        if n < 2:
            raise ValueError("sizes must be at least 2")
    tasks = [(n, float(g), cell_seed(seed, n, g, i))
             for n in sizes for g in gammas for i in range(samples_per_cell)]
    workers = worker_count() if workers is None else workers
    if workers <= 1 or len(tasks) < 2:
        return [_run_cell(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_run_cell, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


def grow_temporal(units: int, arrivals: int, internal: int, gamma, seed: int,
                  initial: int | None = None) -> list[tuple[int, int, int]]:
    """Time-stamped growth records ``(t, u, v)`` for a synthetic evolving network.

    At ``t = 0`` a BA tree on ``initial`` nodes (default ``arrivals``) is
    laid down.  In each later unit, ``arrivals`` new nodes each link to one
    node present at the start of the unit, chosen with weight k**gamma, and
    ``internal`` new edges join unlinked pairs of those nodes with weight
    (k1*k2)**gamma.  Degrees are frozen at the start of the unit.  ``gamma``
    may be a callable of ``t`` to model a changing kernel.
    """
    rng = np.random.default_rng(seed)
    gamma_at = gamma if callable(gamma) else (lambda t: gamma)
    n0 = initial or arrivals
    tree = generate_ba_tree(BAConfig(max(2, n0), float(gamma_at(0)), int(rng.integers(2**63))))
    records = [(0, u, v) for u, v in tree.edges]
    deg = [0] * tree.n
    adj = [set() for _ in range(tree.n)]
    for u, v in tree.edges:
        deg[u] += 1
        deg[v] += 1
        adj[u].add(v)
        adj[v].add(u)
    for t in range(1, units):
        g = float(gamma_at(t))
        present = len(deg)
        w = np.asarray(deg, dtype=np.float64) ** g
        p = w / w.sum()
        targets = rng.choice(present, size=arrivals, p=p)
        pairs = []
        tries = 0
        while len(pairs) < internal and tries < 50 * max(1, internal):
            tries += 1
            a, b = rng.choice(present, size=2, p=p)
            a, b = int(a), int(b)
            key = (min(a, b), max(a, b))
            if a == b or b in adj[a] or key in pairs:
                continue
            pairs.append(key)
        for a, b in pairs:
            records.append((t, a, b))
            deg[a] += 1
            deg[b] += 1
            adj[a].add(b)
            adj[b].add(a)
        for x in targets:
            x = int(x)
            new = len(deg)
            deg.append(1)
            adj.append({x})
            deg[x] += 1
            adj[x].add(new)
            records.append((t, x, new))
    return records
