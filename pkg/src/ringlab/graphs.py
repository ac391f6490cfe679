"""Finite simple graphs and the operations the ring constructions consume.

Vertices are labeled 1..n.  Graphs are immutable; every operation returns a
new value.  Whiskering conventions: ``whisker_all`` puts the pendant vertex
for v_i at label n+i, ``whisker_except`` numbers the pendants n+1, n+2, ...
in increasing order of the vertex they hang from.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterator


def _norm_edge(i: int, j: int) -> tuple[int, int]:
    if i == j:
        raise ValueError(f"loop at vertex {i}")
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class Graph:
    n: int
    edges: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError("negative vertex count")
        norm = frozenset(_norm_edge(i, j) for i, j in self.edges)
        for i, j in norm:
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise ValueError(f"edge ({i},{j}) out of range 1..{self.n}")
        object.__setattr__(self, "edges", norm)

    @staticmethod
    def from_edges(n: int, pairs) -> "Graph":
        return Graph(n, frozenset(_norm_edge(i, j) for i, j in pairs))

    def has_edge(self, i: int, j: int) -> bool:
        return _norm_edge(i, j) in self.edges

    def neighbors(self, v: int) -> set[int]:
        self._check_vertex(v)
        out = set()
        for i, j in self.edges:
            if i == v:
                out.add(j)
            elif j == v:
                out.add(i)
        return out

    def adjacency_masks(self) -> list[int]:
        """Bitmask adjacency, index and bit positions both 0-based."""
        adj = [0] * self.n
        for i, j in self.edges:
            adj[i - 1] |= 1 << (j - 1)
            adj[j - 1] |= 1 << (i - 1)
        return adj

    def _check_vertex(self, v: int) -> None:
        if not (1 <= v <= self.n):
            raise ValueError(f"vertex {v} out of range 1..{self.n}")

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)


def complement(g: Graph) -> Graph:
    edges = {
        (i, j)
        for i in range(1, g.n + 1)
        for j in range(i + 1, g.n + 1)
        if (i, j) not in g.edges
    }
    return Graph(g.n, frozenset(edges))


def is_star_vertex(g: Graph, v: int) -> bool:
    """True iff v is adjacent to every other vertex (vacuously true on K1)."""
    g._check_vertex(v)
    return len(g.neighbors(v)) == g.n - 1


def star_vertices(g: Graph) -> list[int]:
    return [v for v in range(1, g.n + 1) if is_star_vertex(g, v)]


def whisker_all(g: Graph) -> Graph:
    """Attach a pendant vertex w_i = n+i to every vertex v_i."""
    n = g.n
    edges = set(g.edges)
    edges.update((i, n + i) for i in range(1, n + 1))
    return Graph(2 * n, frozenset(edges))


def whisker_except(g: Graph, v: int) -> Graph:
    """Attach pendants to every vertex but v; result has 2n-1 vertices."""
    g._check_vertex(v)
    n = g.n
    edges = set(g.edges)
    label = n
    for u in range(1, n + 1):
        if u == v:
            continue
        label += 1
        edges.add((u, label))
    return Graph(label, frozenset(edges))


def maximal_cliques(g: Graph) -> list[frozenset]:
    """All maximal cliques, sorted lexicographically by sorted vertex list.

    Bron-Kerbosch with pivoting on bitmasks; n stays small here so no degree
    ordering is needed.
    """
    if g.n == 0:
        return []
    adj = g.adjacency_masks()
    out: list[int] = []

    def expand(r: int, p: int, x: int) -> None:
        if not p and not x:
            out.append(r)
            return
        pool = p | x
        # pick the pivot covering the most candidates
        u = _low_vertex(pool)
        best_count = _popcount(p & adj[u])
        scan = pool
        while scan:
            w = _low_vertex(scan)
            scan &= scan - 1
            c = _popcount(p & adj[w])
            if c > best_count:
                best_count, u = c, w
        cand = p & ~adj[u]
        while cand:
            v = _low_vertex(cand)
            bit = 1 << v
            cand &= cand - 1
            expand(r | bit, p & adj[v], x & adj[v])
            p &= ~bit
            x |= bit

    expand(0, (1 << g.n) - 1, 0)
    cliques = [frozenset(_mask_vertices(m)) for m in out]
    return sorted(cliques, key=lambda c: sorted(c))


def enumerate_graphs(n: int) -> Iterator[Graph]:
    """All 2^(n(n-1)/2) labeled simple graphs on n vertices, in edge-mask order."""
    if n > 8:
        raise ValueError("corpus enumeration is capped at n <= 8")
    if n < 0:
        raise ValueError("negative vertex count")
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    for mask in range(1 << len(pairs)):
        edges = frozenset(p for k, p in enumerate(pairs) if mask >> k & 1)
        yield Graph(n, edges)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def _low_vertex(mask: int) -> int:
    return (mask & -mask).bit_length() - 1


def _mask_vertices(mask: int) -> list[int]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


# ---------------------------------------------------------------------------
# text / JSON interchange
# ---------------------------------------------------------------------------


def to_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{i} {j}" for i, j in g.sorted_edges())
    return "\n".join(lines) + "\n"


def from_edge_list(text: str) -> Graph:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip()]
    if not lines or not lines[0].startswith("n "):
        raise ValueError("edge list must start with 'n <count>'")
    n = int(lines[0].split()[1])
    pairs = []
    for ln in lines[1:]:
        a, b = ln.split()
        pairs.append((int(a), int(b)))
    return Graph.from_edges(n, pairs)


def to_json(g: Graph) -> str:
    return json.dumps({"n": g.n, "edges": [list(e) for e in g.sorted_edges()]})


def from_json(text: str) -> Graph:
    obj = json.loads(text)
    return Graph.from_edges(int(obj["n"]), [tuple(e) for e in obj["edges"]])
