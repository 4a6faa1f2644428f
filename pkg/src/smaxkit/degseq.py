"""Degree-sequence bookkeeping and graphicality tests.

Index convention: the cumulative histogram and the phi vector are 1-based
in the mathematics (sigma_1 .. sigma_d).  Internally they are stored in
0-based Python sequences, so ``sigma[j - 1]`` holds sigma_j.  Outside the
stored range sigma_i is 0 for i <= 0 and sigma_d for i > d.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from typing import Iterable, Sequence


class DomainError(ValueError):
    """Input lies outside the domain of an operation."""


@dataclass(frozen=True)
class DegreeSequence:
    """Nonincreasing tuple of node degrees.

    The simple-graph bound ``degrees[0] <= n - 1`` is *not* enforced here,
    since graphicality tests must be able to reject such sequences.
    """

    degrees: tuple[int, ...]

    def __post_init__(self):
        degs = tuple(int(x) for x in self.degrees)
        if any(x < 0 for x in degs):
            raise DomainError("degrees must be nonnegative")
        object.__setattr__(self, "degrees", tuple(sorted(degs, reverse=True)))

    @classmethod
    def parse(cls, text: str) -> "DegreeSequence":
        """Parse nonnegative integers separated by whitespace or commas."""
        tokens = text.replace(",", " ").split()
        try:
            values = [int(tok) for tok in tokens]
        except ValueError as exc:
            raise DomainError(f"not an integer: {exc}") from None
        if not values:
            raise DomainError("empty degree sequence")
        return cls(tuple(values))

    @property
    def n(self) -> int:
        return len(self.degrees)

    @property
    def total(self) -> int:
        return sum(self.degrees)

    @property
    def max(self) -> int:
        return self.degrees[0] if self.degrees else 0

    def __iter__(self):
        return iter(self.degrees)

    def __len__(self):
        return len(self.degrees)

    def __getitem__(self, i):
        return self.degrees[i]


@dataclass(frozen=True)
class CumHistogram:
    """Reverse cumulative degree histogram.

    ``sigma[j - 1]`` is the number of degrees that are at least ``d - j + 1``.
    """

    sigma: tuple[int, ...]

    @property
    def d(self) -> int:
        return len(self.sigma)

    def __iter__(self):
        return iter(self.sigma)

    def __len__(self):
        return len(self.sigma)


def _as_degrees(D) -> list[int]:
    if isinstance(D, DegreeSequence):
        return list(D.degrees)
    return [int(x) for x in D]


def _as_sigma(sigma) -> Sequence[int]:
    if isinstance(sigma, CumHistogram):
        return sigma.sigma
    return sigma


def revcdf(D, d: int | None = None) -> CumHistogram:
    """Build the reverse cumulative histogram of ``D``.

    ``d`` defaults to ``max(D)``; a larger fixed ``d`` pads the front of the
    histogram with zeros (used while a sequence decays during construction).
    """
    degs = _as_degrees(D)
    if d is None:
        if not degs or max(degs) < 1:
            raise DomainError("revcdf needs a nonempty sequence with a positive entry")
        d = max(degs)
    elif degs and d < max(degs):
        raise DomainError(f"reference maximum {d} below max degree {max(degs)}")
    counts = [0] * (d + 1)
    for x in degs:
        if x < 0:
            raise DomainError("degrees must be nonnegative")
        counts[x] += 1
    sigma = []
    running = 0
    for j in range(1, d + 1):
        running += counts[d - j + 1]
        sigma.append(running)
    return CumHistogram(tuple(sigma))


def erdos_gallai_violation(D) -> int | None:
    """First ``k`` (1-based) at which the Erdos-Gallai inequality fails.

    Checks 1 <= k <= n; the k = n case matters only for sequences such as
    (2,) whose single entry exceeds n - 1.  Parity is not examined.
    """
    degs = sorted(_as_degrees(D), reverse=True)
    n = len(degs)
    lhs = 0
    for k in range(1, n + 1):
        lhs += degs[k - 1]
        rhs = k * (k - 1) + sum(min(k, x) for x in degs[k:])
        if lhs > rhs:
            return k
    return None


def erdos_gallai(D) -> bool:
    """Classical Erdos-Gallai test, with the even-sum check done first."""
    degs = _as_degrees(D)
    if sum(degs) % 2:
        return False
    if any(x < 0 for x in degs):
        return False
    return erdos_gallai_violation(degs) is None


def tv_slack(sigma) -> list[int]:
    """Right side minus left side of the Erdos-Gallai inequality at k = sigma_j.

    Evaluated term by term from the histogram, O(d^2).  Entry ``j - 1``
    corresponds to histogram index ``j``.
    """
    sig = _as_sigma(sigma)
    d = len(sig)
    out = []
    for j in range(1, d + 1):
        k = sig[j - 1]
        lhs = 0
        prev = 0
        for i in range(1, j + 1):
            lhs += (sig[i - 1] - prev) * (d - i + 1)
            prev = sig[i - 1]
        rhs = k * (k - 1)
        for i in range(j + 1, d + 1):
            rhs += (sig[i - 1] - sig[i - 2]) * min(k, d - i + 1)
        out.append(rhs - lhs)
    return out


def tripathi_vijay(sigma, total: int) -> bool:
    """Graphicality from the histogram: one inequality per histogram index."""
    if total % 2:
        return False
    return all(x >= 0 for x in tv_slack(sigma))


def build_phi(sigma) -> list[int]:
    """Closed-form phi vector, O(d).

    Writes ``c = d - sigma_j`` and ``P_j = sum_{i<=j} (sigma_i - sigma_{i-1}) i``.
    In the min(sigma_j, d-i+1) sum, the first argument wins for i <= c and the
    second for i > c, which gives

        c >= j+1:  sigma_j (sigma_c - 1) + (d+1)(sigma_d - sigma_c - sigma_j)
                   + P_j - (P_d - P_c)
        c <  j+1:  sigma_j (sigma_j - 1) + (d+1)(sigma_d - 2 sigma_j)
                   + P_j - (P_d - P_j)

    Each entry equals the corresponding ``tv_slack`` value exactly.
    """
    sig = _as_sigma(sigma)
    d = len(sig)
    if d == 0:
        return []
    # prefix[i] = P_i for 0 <= i <= d
    prefix = [0] * (d + 1)
    prev = 0
    for i in range(1, d + 1):
        prefix[i] = prefix[i - 1] + (sig[i - 1] - prev) * i
        prev = sig[i - 1]
    s_d = sig[d - 1]
    p_d = prefix[d]
    phi = []
    for j in range(1, d + 1):
        s_j = sig[j - 1]
        c = d - s_j
        if c >= j + 1:
            s_c = sig[c - 1]
            v = s_j * (s_c - 1) + (d + 1) * (s_d - s_c - s_j) + prefix[j] - (p_d - prefix[c])
        else:
            v = s_j * (s_j - 1) + (d + 1) * (s_d - 2 * s_j) + prefix[j] - (p_d - prefix[j])
        phi.append(v)
    return phi


def is_graphical_phi(phi: Iterable[int], total: int) -> bool:
    """Graphical iff the degree sum is even and no phi entry is negative."""
    if total % 2:
        return False
    return all(x >= 0 for x in phi)


def is_graphical(D) -> bool:
    """Convenience entry point: phi-vector test on an arbitrary sequence."""
    degs = _as_degrees(D)
    if any(x < 0 for x in degs):
        return False
    total = sum(degs)
    if total % 2:
        return False
    if total == 0:
        return True
    return is_graphical_phi(build_phi(revcdf(degs)), total)


def havel_hakimi(D) -> list[tuple[int, int]] | None:
    """Constructive realization attempt.

    Repeatedly joins the node of largest remaining degree to the next
    largest ones.  Returns an edge list over positions of ``D`` (0-based), or
    None when the sequence cannot be realized.
    """
    degs = _as_degrees(D)
    if any(x < 0 for x in degs) or sum(degs) % 2:
        return None
    heap = [(-x, i) for i, x in enumerate(degs) if x > 0]
    heapq.heapify(heap)
    edges = []
    while heap:
        negk, u = heapq.heappop(heap)
        k = -negk
        if k > len(heap):
            return None
        partners = [heapq.heappop(heap) for _ in range(k)]
        for negr, v in partners:
            edges.append((min(u, v), max(u, v)))
            if negr + 1 < 0:
                heapq.heappush(heap, (negr + 1, v))
    return edges
