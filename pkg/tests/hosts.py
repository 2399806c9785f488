"""Hand-built host graphs shared by several test modules."""
from __future__ import annotations

import random

from twodist.generators import random_tight
from twodist.graph import Graph


def filler(n: int, cut: list[tuple[int, int]]) -> list[tuple[int, int]]:
    """Edges of the 4-regular circulant C_n(1, 2) minus ``cut``."""
    edges = {tuple(sorted((i, (i + d) % n))) for i in range(n) for d in (1, 2)}
    return sorted(edges - {tuple(sorted(e)) for e in cut})


def special_host() -> tuple[Graph, dict[str, int]]:
    """A special (1,1,0)-vertex u2 whose 1-paths both end at 3-vertices.

    u2 - t is a 0-path; u2 - u3 - u4 leads to a small (1,1,1)-vertex u4 and
    u2 - u1 - y to a 3-vertex. All loose ends go into a 4-regular filler.
    """
    fill = 12
    names = ["t", "u1", "u2", "u3", "u4", "y", "a1", "a2", "p", "q"]
    ix = {nm: fill + i for i, nm in enumerate(names)}
    cut = [(0, 1), (3, 4), (6, 7), (9, 10)]
    edges = filler(fill, cut)
    pairs = [("u2", "t"), ("u2", "u1"), ("u1", "y"), ("u2", "u3"), ("u3", "u4"),
             ("u4", "a1"), ("a1", "p"), ("u4", "a2"), ("a2", "q")]
    edges += [(ix[a], ix[b]) for a, b in pairs]
    for name, (x, z) in zip(["t", "y", "p", "q"], cut):
        edges += [(ix[name], x), (ix[name], z)]
    return Graph.from_edges(fill + len(names), edges), ix


def three_path_host() -> tuple[Graph, list[int]]:
    """Two K4s joined through three 2-vertices."""
    k4 = [(a, b) for a in range(4) for b in range(a + 1, 4)]
    edges = k4 + [(a + 4, b + 4) for a, b in k4]
    edges += [(0, 8), (8, 9), (9, 10), (10, 4)]
    return Graph.from_edges(11, edges), [8, 9, 10]


def medium_host() -> tuple[Graph, int]:
    """Center 0 with 1-paths to two 3-vertices and one 4-vertex (ends padded with leaves)."""
    edges, nxt = [], 1
    for far_degree in (3, 3, 4):
        mid, far = nxt, nxt + 1
        edges += [(0, mid), (mid, far)]
        nxt += 2
        for _ in range(far_degree - 1):
            edges.append((far, nxt))
            nxt += 1
    return Graph.from_edges(nxt, edges), 0


def j_host() -> Graph:
    """A 4-vertex with a 0-path to a 3-vertex and 1-paths to three (1,1,1)-vertices."""
    edges: list[tuple[int, int]] = []
    count = [0]

    def new() -> int:
        count[0] += 1
        return count[0] - 1

    def claw() -> int:
        x = new()
        edges.extend([(x, new()), (x, new())])
        return x

    u = new()
    edges.append((u, claw()))
    for _ in range(3):
        mid, c = new(), new()
        edges += [(u, mid), (mid, c)]
        for _ in range(2):
            m2 = new()
            edges += [(c, m2), (m2, claw())]
    return Graph.from_edges(count[0], edges)


def tight(seed: int, clean: bool) -> Graph:
    return random_tight(random.Random(seed).randint(10, 30), seed, p4=[0.5, 0.7, 0.9][seed % 3], clean=clean)
