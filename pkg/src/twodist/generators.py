"""Named graph constructions (Moore graphs, lower-bound examples) and random sparse corpora."""
from __future__ import annotations

import random
from fractions import Fraction

from .graph import (
    Graph,
    densest_subgraph,
    girth,
    is_connected,
    mad_exact,
    shortest_cycle,
    two_distance_neighbors,
)


def cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete(n: int) -> Graph:
    return Graph.from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def petersen() -> Graph:
    # outer 5-cycle 0..4, spokes i -> i+5, inner pentagram 5..9
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, edges)


def hoffman_singleton() -> Graph:
    """Pentagons P_h and pentagrams Q_i; vertex j of P_h meets vertex h*i+j of Q_i."""

    def p(h: int, j: int) -> int:
        return 5 * h + j

    def q(i: int, j: int) -> int:
        return 25 + 5 * i + j

    edges = []
    for h in range(5):
        for j in range(5):
            edges.append((p(h, j), p(h, (j + 1) % 5)))
            edges.append((q(h, j), q(h, (j + 2) % 5)))
    for h in range(5):
        for j in range(5):
            for i in range(5):
                edges.append((p(h, j), q(i, (h * i + j) % 5)))
    return Graph.from_edges(50, edges)


def fig4_girth4(delta: int) -> Graph:
    """Two vertices u, v sharing delta-1 common neighbors, plus a path u-b-a-v.

    u and v are not adjacent: the drawn u-v segment runs through one of the
    common neighbors. Ids: u=0, v=1, common neighbors 2..delta, a, b last.
    """
    if delta < 2:
        raise ValueError("delta must be >= 2")
    u, v = 0, 1
    common = list(range(2, delta + 1))
    a, b = delta + 1, delta + 2
    edges = [(u, c) for c in common] + [(v, c) for c in common]
    edges += [(v, a), (a, b), (b, u)]
    return Graph.from_edges(delta + 3, edges)


FIG4_GIRTH5_LABELS = ("u1", "u2", "u3", "u4", "u5", "u6", "u7", "u'2", "s1", "s2", "s3")


def fig4_girth5() -> Graph:
    """Delta = 4, girth 5 and no 2-distance 6-coloring.

    5-cycle u1..u5; u6 sees all of it (u6-u1, u6-s1-u3, u6-u'2-u4);
    u'2 sees everything on the cycle but u2; u7 is reached from u4, from u1
    through s2 and from u6 through s3, so it sees u1, u3..u6 and u'2.
    """
    ix = {name: i for i, name in enumerate(FIG4_GIRTH5_LABELS)}
    pairs = [
        ("u1", "u2"), ("u2", "u3"), ("u3", "u4"), ("u4", "u5"), ("u5", "u1"),
        ("u1", "u6"), ("u6", "s1"), ("s1", "u3"), ("u6", "u'2"), ("u'2", "u4"),
        ("u4", "u7"), ("u1", "s2"), ("s2", "u7"), ("u6", "s3"), ("s3", "u7"),
    ]
    return Graph.from_edges(11, [(ix[a], ix[b]) for a, b in pairs])


def fig4_girth5_checklist(g: Graph | None = None) -> list[tuple[str, bool]]:
    """The distance facts the no-6-coloring argument uses, each checked on ``g``."""
    g = g if g is not None else fig4_girth5()
    ix = {name: i for i, name in enumerate(FIG4_GIRTH5_LABELS)}

    def sees(a: str, names: list[str]) -> bool:
        near = two_distance_neighbors(g, ix[a])
        return all(ix[b] in near for b in names)

    ring = ["u1", "u2", "u3", "u4", "u5"]
    return [
        ("u1..u5 form a 5-cycle", all(g.has_edge(ix[a], ix[b]) for a, b in zip(ring, ring[1:] + ring[:1]))),
        ("u6 within distance 2 of u1..u5", sees("u6", ring)),
        ("u'2 within distance 2 of u1,u3,u4,u5,u6", sees("u'2", ["u1", "u3", "u4", "u5", "u6"])),
        ("u7 within distance 2 of u1,u3,u4,u5,u6,u'2", sees("u7", ["u1", "u3", "u4", "u5", "u6", "u'2"])),
        ("max degree 4", g.max_degree() == 4),
        ("girth 5", girth(g) == 5),
    ]


def _wegner(delta: int, with_xy_edge: bool) -> Graph:
    if delta < 4 or delta % 2:
        raise ValueError("Wegner constructions are provided for even delta >= 4 only")
    x, y, z = 0, 1, 2
    sizes = {(x, y): delta // 2 - 1, (z, x): delta // 2, (y, z): delta // 2}
    edges = [(x, y)] if with_xy_edge else []
    nxt = 3
    for (a, b), size in sizes.items():
        for _ in range(size):
            edges += [(a, nxt), (b, nxt)]
            nxt += 1
    return Graph.from_edges(nxt, edges)


def wegner_g3(delta: int) -> Graph:
    """x, y, z with groups of delta/2-1, delta/2, delta/2 common neighbors and the edge xy."""
    return _wegner(delta, True)


def wegner_g4(delta: int) -> Graph:
    """Same groups as :func:`wegner_g3` without the edge xy (girth 4)."""
    return _wegner(delta, False)


class GenerationError(RuntimeError):
    pass


def satisfies_hypotheses(g: Graph, target_girth: int = 10) -> bool:
    return (
        g.n > 0
        and g.min_degree() >= 2
        and g.max_degree() == 4
        and girth(g) >= target_girth
        and mad_exact(g) < Fraction(5, 2)
    )


def _outerplanar_skeleton(rng: random.Random, s: int) -> list[tuple[int, int]]:
    edges = [(i, (i + 1) % s) for i in range(s)]
    deg = [2] * s
    chords: list[tuple[int, int]] = []
    for _ in range(4 * s):
        a, b = sorted(rng.sample(range(s), 2))
        if deg[a] >= 4 or deg[b] >= 4 or b - a == 1 or (a == 0 and b == s - 1):
            continue
        if any(c < a < d < b or a < c < b < d for c, d in chords):
            continue
        if (a, b) in chords:
            continue
        chords.append((a, b))
        deg[a] += 1
        deg[b] += 1
    return edges + chords


def _subdivide(
    s: int, skeleton: list[tuple[int, int]], ks: list[int]
) -> tuple[Graph, dict[frozenset[int], int]]:
    edges = []
    owner: dict[frozenset[int], int] = {}
    nxt = s
    for idx, ((a, b), k) in enumerate(zip(skeleton, ks)):
        chain = [a] + list(range(nxt, nxt + k)) + [b]
        nxt += k
        for e in zip(chain, chain[1:]):
            edges.append(e)
            owner[frozenset(e)] = idx
    return Graph.from_edges(nxt, edges), owner


def random_sparse(n: int, target_girth: int = 10, seed: int = 0, max_attempts: int = 200) -> Graph:
    """Connected planar graph with min degree 2, Delta 4, given girth and mad < 5/2.

    An outerplanar skeleton (a cycle with non-crossing chords, degrees <= 4)
    gets each edge subdivided 0-2 times. While the girth is short, a thread
    on a shortest cycle is subdivided; while mad >= 5/2, a thread inside a
    densest subgraph is. The result is padded to exactly n vertices.
    Subdivision keeps the graph planar and cannot lower the girth; all four
    predicates are rechecked on the final graph regardless.
    """
    if n < 10:
        raise ValueError("n must be >= 10")
    if target_girth not in (9, 10):
        raise ValueError("target_girth must be 9 or 10")
    rng = random.Random(seed)
    limit = Fraction(5, 2)
    for _ in range(max_attempts):
        s = rng.randint(max(3, n // 5), max(4, n // 3))
        skeleton = _outerplanar_skeleton(rng, s)
        if not any(sum(1 for e in skeleton if v in e) == 4 for v in range(s)):
            continue
        ks = [rng.choice((0, 1, 1, 2)) for _ in skeleton]
        g, owner = _subdivide(s, skeleton, ks)
        while g.n <= n:
            cyc = shortest_cycle(g)
            if cyc is not None and len(cyc) < target_girth:
                region = list(zip(cyc, cyc[1:] + cyc[:1]))
            else:
                dense = densest_subgraph(g)
                sub, _ = g.induced(dense)
                if Fraction(2 * sub.m, sub.n) < limit:
                    break
                region = [(u, v) for u in dense for v in g.adj[u] if v in dense]
            threads = sorted({owner[frozenset(e)] for e in region})
            low = min(ks[i] for i in threads)
            ks[rng.choice([i for i in threads if ks[i] == low])] += 1
            g, owner = _subdivide(s, skeleton, ks)
        if g.n > n:
            continue
        while g.n < n:
            # pad the shortest threads so padding does not just grow long 2-paths
            order = sorted(range(len(skeleton)), key=lambda i: (ks[i], rng.random()))
            ks[order[0]] += 1
            g, owner = _subdivide(s, skeleton, ks)
        if is_connected(g) and satisfies_hypotheses(g, target_girth):
            return g
    raise GenerationError(f"no graph found for n={n} after {max_attempts} attempts; try a larger n")


def _random_skeleton(rng: random.Random, s: int, p4: float) -> list[tuple[int, int]] | None:
    """Random graph with degrees 3 and 4 and no cycle shorter than 4, or None."""
    want = [4 if rng.random() < p4 else 3 for _ in range(s)]
    adj: list[set[int]] = [set() for _ in range(s)]

    def near(a: int, b: int) -> bool:
        # distance(a, b) <= 2
        return b in adj[a] or bool(adj[a] & adj[b])

    for _ in range(20 * s):
        open_ = [v for v in range(s) if len(adj[v]) < want[v]]
        if len(open_) < 2:
            break
        a, b = rng.sample(open_, 2)
        if a != b and not near(a, b):
            adj[a].add(b)
            adj[b].add(a)
    if any(len(adj[v]) < 3 for v in range(s)):
        return None
    return sorted((a, b) for a in range(s) for b in adj[a] if a < b)


def random_tight(
    s: int, seed: int = 0, p4: float = 0.5, clean: bool = False, max_attempts: int = 500
) -> Graph:
    """Graph with min degree 2, Delta 4, girth >= 10 and mad < 5/2 whose threads have length <= 2.

    A random skeleton with degrees 3 and 4 (not necessarily planar) has each
    edge subdivided at most twice. Such graphs sit close to the density limit,
    so every kind of reducible configuration shows up, unlike the long-thread
    graphs of :func:`random_sparse`. With ``clean`` set, threads ending at a
    3-vertex have length at most 1, which rules out the two path configurations.
    """
    if s < 4:
        raise ValueError("s must be >= 4")
    rng = random.Random(seed)
    limit = Fraction(5, 2)
    for _ in range(max_attempts):
        skeleton = _random_skeleton(rng, s, p4)
        if skeleton is None:
            continue
        degree = [0] * s
        for a, b in skeleton:
            degree[a] += 1
            degree[b] += 1
        cap = [1 if clean and 3 in (degree[a], degree[b]) else 2 for a, b in skeleton]
        ks = [min(c, rng.choice((1, 1, 1, 2, 0))) for c in cap]
        g, owner = _subdivide(s, skeleton, ks)
        ok = True
        while ok:
            cyc = shortest_cycle(g)
            if cyc is not None and len(cyc) < 10:
                region = list(zip(cyc, cyc[1:] + cyc[:1]))
            else:
                dense = densest_subgraph(g)
                sub, _ = g.induced(dense)
                if Fraction(2 * sub.m, sub.n) < limit:
                    break
                region = [(u, v) for u in dense for v in g.adj[u] if v in dense]
            threads = [i for i in sorted({owner[frozenset(e)] for e in region}) if ks[i] < cap[i]]
            if not threads:
                ok = False
                break
            low = min(ks[i] for i in threads)
            ks[rng.choice([i for i in threads if ks[i] == low])] += 1
            g, owner = _subdivide(s, skeleton, ks)
        if ok and is_connected(g) and satisfies_hypotheses(g, 10):
            return g
    raise GenerationError(f"no tight graph found for s={s} after {max_attempts} attempts")
