"""Simple undirected graphs and the structural metrics used throughout the package.

Graphs are immutable once built. Vertex ids are ``0..n-1``.
"""
from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import networkx as nx


class GraphFormatError(ValueError):
    """Raised when an edge-list document cannot be parsed."""

    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class Graph:
    __slots__ = ("n", "adj", "_m")

    def __init__(self, n: int, adjacency: Sequence[Iterable[int]]):
        if len(adjacency) != n:
            raise ValueError("adjacency length does not match n")
        adj = tuple(tuple(sorted(set(nbrs))) for nbrs in adjacency)
        total = 0
        for v, nbrs in enumerate(adj):
            for w in nbrs:
                if w == v:
                    raise ValueError(f"self-loop at {v}")
                if not 0 <= w < n:
                    raise ValueError(f"neighbor {w} of {v} out of range")
                if v not in adj[w]:
                    raise ValueError(f"asymmetric adjacency {v}-{w}")
            total += len(nbrs)
        self.n = n
        self.adj = adj
        self._m = total // 2

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at {u}")
            if v in adj[u]:
                raise ValueError(f"duplicate edge {u}-{v}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(n, adj)

    @property
    def m(self) -> int:
        return self._m

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> tuple[int, ...]:
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return v in self.adj[u]

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.adj[u] if u < v]

    def max_degree(self) -> int:
        return max((len(a) for a in self.adj), default=0)

    def min_degree(self) -> int:
        return min((len(a) for a in self.adj), default=0)

    def induced(self, keep: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph on ``keep``; returns it with the new-to-old id map."""
        old = sorted(set(keep))
        new_id = {v: i for i, v in enumerate(old)}
        adj = [[new_id[w] for w in self.adj[v] if w in new_id] for v in old]
        return Graph(len(old), adj), old

    def remove(self, drop: Iterable[int]) -> tuple["Graph", list[int]]:
        drop = set(drop)
        return self.induced(v for v in range(self.n) if v not in drop)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.adj == other.adj

    def __hash__(self) -> int:
        return hash((self.n, self.adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


def load_graph(text: str) -> Graph:
    header = None
    edges: list[tuple[int, int]] = []
    seen: set[tuple[int, int]] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.isdigit() for p in parts):
            raise GraphFormatError(lineno, f"expected two non-negative integers, got {raw!r}")
        a, b = int(parts[0]), int(parts[1])
        if header is None:
            header = (a, b)
            continue
        n, m = header
        if len(edges) >= m:
            raise GraphFormatError(lineno, f"more than the declared {m} edges")
        if a >= n or b >= n:
            raise GraphFormatError(lineno, f"vertex id out of range for n={n}")
        if a == b:
            raise GraphFormatError(lineno, f"self-loop at vertex {a}")
        key = (min(a, b), max(a, b))
        if key in seen:
            raise GraphFormatError(lineno, f"duplicate edge {key[0]} {key[1]}")
        seen.add(key)
        edges.append(key)
    if header is None:
        raise GraphFormatError(1, "missing 'n m' header")
    if len(edges) != header[1]:
        raise GraphFormatError(
            len(text.splitlines()), f"declared {header[1]} edges, found {len(edges)}"
        )
    return Graph.from_edges(header[0], edges)


def dump_graph(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def _bfs_path(g: Graph, src: int, dst: int, limit: float) -> list[int] | None:
    # shortest src->dst path avoiding the edge src-dst, only if shorter than `limit`
    parent = {src: src}
    dist = {src: 0}
    queue = deque([src])
    while queue:
        x = queue.popleft()
        d = dist[x]
        if d + 1 >= limit:
            break
        for y in g.adj[x]:
            if y in dist or (x == src and y == dst):
                continue
            parent[y] = x
            if y == dst:
                out = [y]
                while out[-1] != src:
                    out.append(parent[out[-1]])
                return out[::-1]
            dist[y] = d + 1
            queue.append(y)
    return None


def shortest_cycle(g: Graph) -> list[int] | None:
    """Vertices of one shortest cycle in order, or None for forests."""
    best: list[int] | None = None
    for u, v in g.edges():
        limit = len(best) - 1 if best else math.inf
        p = _bfs_path(g, u, v, limit)
        if p is not None and (best is None or len(p) < len(best)):
            best = p
            if len(best) == 3:
                break
    return best


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests."""
    cyc = shortest_cycle(g)
    return math.inf if cyc is None else len(cyc)


def two_distance_neighbors(g: Graph, v: int) -> set[int]:
    out = set(g.adj[v])
    for w in g.adj[v]:
        out.update(g.adj[w])
    out.discard(v)
    return out


def square(g: Graph) -> Graph:
    return Graph(g.n, [two_distance_neighbors(g, v) for v in range(g.n)])


def average_degree(g: Graph) -> Fraction:
    return Fraction(2 * g.m, g.n) if g.n else Fraction(0)


def _densest(g: Graph, p: int, q: int) -> tuple[int, set[int]]:
    """Maximize q|E(H)| - p|V(H)| over vertex sets H (max-closure via min cut)."""
    net = nx.DiGraph()
    net.add_node("s")
    net.add_node("t")
    for v in range(g.n):
        net.add_edge(("v", v), "t", capacity=p)
    for u, v in g.edges():
        e = ("e", u, v)
        net.add_edge("s", e, capacity=q)
        net.add_edge(e, ("v", u))
        net.add_edge(e, ("v", v))
    cut, (source_side, _) = nx.minimum_cut(net, "s", "t")
    verts = {node[1] for node in source_side if isinstance(node, tuple) and node[0] == "v"}
    return q * g.m - cut, verts


def densest_subgraph(g: Graph) -> set[int]:
    """A vertex set whose induced subgraph attains the maximum average degree."""
    if g.n == 0:
        raise ValueError("empty graph")
    if g.m == 0:
        return {0}
    best = set(range(g.n))
    p, q = g.m, g.n
    while True:
        value, verts = _densest(g, p, q)
        if value <= 0:
            return best
        best = verts
        sub, _ = g.induced(verts)
        p, q = sub.m, sub.n


def mad_exact(g: Graph) -> Fraction:
    """Maximum average degree, exactly.

    Iterates the threshold test "is there H with |E(H)|/|V(H)| > p/q" starting
    from the whole graph; each positive answer hands back a strictly denser H,
    and only finitely many densities exist, so the loop ends on the optimum.
    """
    if g.n == 0:
        raise ValueError("mad of the empty graph is undefined")
    sub, _ = g.induced(densest_subgraph(g))
    return average_degree(sub)


@dataclass(frozen=True)
class PathThread:
    """A maximal run of 2-vertices between two vertices of degree other than 2."""

    start: int
    internals: tuple[int, ...]
    end: int

    @property
    def k(self) -> int:
        return len(self.internals)

    @property
    def endpoints(self) -> tuple[int, int]:
        return (self.start, self.end)

    def walk(self) -> tuple[int, ...]:
        return (self.start, *self.internals, self.end)


@dataclass(frozen=True)
class Incidence:
    """One end of a thread seen from an endpoint."""

    thread: PathThread
    near: int
    first: int  # neighbor of `near` on the thread
    second: int  # vertex at distance 2 along the thread
    far: int

    @property
    def k(self) -> int:
        return self.thread.k


@dataclass
class PathDecomposition:
    paths: list[PathThread]
    pendant: list[PathThread]
    cycles: list[tuple[int, ...]]
    _incident: dict[int, list[Incidence]] = field(default_factory=dict, repr=False)
    _owner: dict[int, PathThread] = field(default_factory=dict, repr=False)

    @property
    def has_two_regular_component(self) -> bool:
        return bool(self.cycles)

    def incident(self, v: int) -> list[Incidence]:
        """Proper k-paths (both ends of degree >= 3) that end at ``v``."""
        return self._incident.get(v, [])

    def thread_of(self, v: int) -> PathThread | None:
        return self._owner.get(v)

    def on_cycle(self, v: int) -> bool:
        return any(v in c for c in self.cycles)


def enumerate_paths(g: Graph) -> PathDecomposition:
    threads: list[PathThread] = []
    for v in range(g.n):
        if g.degree(v) == 2 or g.degree(v) == 0:
            continue
        for w in g.adj[v]:
            internals = []
            prev, cur = v, w
            while g.degree(cur) == 2:
                internals.append(cur)
                a, b = g.adj[cur]
                prev, cur = cur, (b if a == prev else a)
            fwd = (v, internals[0] if internals else cur)
            bwd = (cur, internals[-1] if internals else v)
            if fwd <= bwd:
                threads.append(PathThread(v, tuple(internals), cur))
    paths, pendant = [], []
    owner: dict[int, PathThread] = {}
    incident: dict[int, list[Incidence]] = {}
    for t in threads:
        for x in t.internals:
            owner[x] = t
        if g.degree(t.start) >= 3 and g.degree(t.end) >= 3:
            paths.append(t)
            seq = t.walk()
            for near, first, second, far in (
                (seq[0], seq[1], seq[2] if len(seq) > 2 else None, seq[-1]),
                (seq[-1], seq[-2], seq[-3] if len(seq) > 2 else None, seq[0]),
            ):
                incident.setdefault(near, []).append(Incidence(t, near, first, second, far))
        else:
            pendant.append(t)
    cycles = []
    seen = set(owner)
    for v in range(g.n):
        if g.degree(v) != 2 or v in seen:
            continue
        cyc = [v]
        seen.add(v)
        prev, cur = v, g.adj[v][0]
        while cur != v:
            cyc.append(cur)
            seen.add(cur)
            a, b = g.adj[cur]
            prev, cur = cur, (b if a == prev else a)
        cycles.append(tuple(cyc))
    return PathDecomposition(paths, pendant, cycles, incident, owner)


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    seen = {0}
    stack = [0]
    while stack:
        x = stack.pop()
        for y in g.adj[x]:
            if y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == g.n
