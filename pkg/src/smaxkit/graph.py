"""Simple undirected graphs over integer node ids, plus edge-list CSV I/O."""

from __future__ import annotations

import io
from dataclasses import dataclass, field


class GraphFormatError(ValueError):
    """Malformed edge-list input; ``line`` is 1-based when known."""

    def __init__(self, message: str, line: int | None = None):
        super().__init__(message if line is None else f"line {line}: {message}")
        self.line = line


@dataclass
class Graph:
    """Simple graph on nodes ``0 .. n-1``.

    Edges are stored as ``(u, v)`` with ``u < v``.  No self-loops, no
    duplicates; both are rejected on construction.
    """

    n: int
    edges: list[tuple[int, int]] = field(default_factory=list)

    def __post_init__(self):
        seen = set()
        canon = []
        for u, v in self.edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at node {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise ValueError(f"edge ({u}, {v}) outside 0..{self.n - 1}")
            e = (u, v) if u < v else (v, u)
            if e in seen:
                raise ValueError(f"duplicate edge {e}")
            seen.add(e)
            canon.append(e)
        self.edges = canon

    @property
    def m(self) -> int:
        return len(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def degree_sequence(self) -> list[int]:
        return sorted(self.degrees(), reverse=True)

    def adjacency(self) -> list[set[int]]:
        adj: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            adj[u].add(v)
            adj[v].add(u)
        return adj

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest member."""
        adj = self.adjacency()
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack = [s]
            comp = []
            while stack:
                x = stack.pop()
                comp.append(x)
                for y in adj[x]:
                    if not seen[y]:
                        seen[y] = True
                        stack.append(y)
            comps.append(sorted(comp))
        return comps

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def relabel(self, perm: list[int]) -> "Graph":
        """Graph with node ``i`` renamed ``perm[i]``."""
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])


def write_edges_csv(g: Graph) -> str:
    """Lines ``u,v`` with 1-based ids, ``u < v``, sorted lexicographically."""
    rows = sorted((u + 1, v + 1) for u, v in g.edges)
    return "".join(f"{u},{v}\n" for u, v in rows)


def read_edges_csv(text: str) -> Graph:
    """Parse an edge list of ``u,v`` rows.

    Ids are arbitrary tokens, mapped to dense ids in order of first
    appearance.  Blank lines and ``#`` comments are skipped; a header row
    ``u,v`` is tolerated.
    """
    ids: dict[str, int] = {}
    edges = []
    seen = set()
    for lineno, raw in enumerate(io.StringIO(text), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) != 2 or not all(parts):
            raise GraphFormatError(f"expected 'u,v', got {line!r}", lineno)
        if lineno == 1 and parts == ["u", "v"]:
            continue
        a, b = parts
        if a == b:
            raise GraphFormatError(f"self-loop on {a!r}", lineno)
        u = ids.setdefault(a, len(ids))
        v = ids.setdefault(b, len(ids))
        key = (min(u, v), max(u, v))
        if key in seen:
            raise GraphFormatError(f"duplicate edge {a},{b}", lineno)
        seen.add(key)
        edges.append(key)
    if not edges:
        raise GraphFormatError("no edges")
    return Graph(len(ids), edges)
