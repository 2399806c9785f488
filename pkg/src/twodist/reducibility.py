"""Vertex taxonomy, reducible-configuration detectors and the constructive 6-list colorer."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Sequence

from .coloring import list_color
from .gadgets import build_gadget
from .graph import (
    Graph,
    Incidence,
    PathDecomposition,
    dump_graph,
    enumerate_paths,
    girth,
    mad_exact,
    square,
    two_distance_neighbors,
)

BASE_THRESHOLD = 12
CONFIG_IDS = ("L8", "L9", "L10", "L11", "L12", "L13", "L14")
FLAVORS = ("small", "medium", "large", "huge")


@dataclass(frozen=True)
class VertexClass:
    vertex: int
    degree: int
    signature: tuple[int, ...]
    flavor: str | None = None
    special: bool = False
    light: bool = False
    degenerate: bool = False


class Analysis:
    """Thread decomposition plus memoized vertex classes for one graph."""

    def __init__(self, g: Graph):
        self.g = g
        self.paths: PathDecomposition = enumerate_paths(g)
        self._classes: dict[int, VertexClass] = {}
        self._on_cycle = {v for c in self.paths.cycles for v in c}
        self._pendant = {v for t in self.paths.pendant for v in t.walk()}

    def incidences(self, v: int) -> list[Incidence]:
        return sorted(self.paths.incident(v), key=lambda inc: inc.first)

    def signature(self, v: int) -> tuple[int, ...]:
        return tuple(sorted((inc.k for inc in self.paths.incident(v)), reverse=True))

    def degenerate(self, v: int) -> bool:
        d = self.g.degree(v)
        if d <= 1 or v in self._on_cycle or v in self._pendant:
            return True
        return d >= 3 and len(self.paths.incident(v)) != d

    def cls(self, v: int) -> VertexClass:
        if v not in self._classes:
            self._classes[v] = self._classify(v)
        return self._classes[v]

    def flavor(self, v: int) -> str | None:
        g = self.g
        if g.degree(v) != 3 or self.signature(v) != (1, 1, 1) or self.degenerate(v):
            return None
        big = sum(1 for inc in self.paths.incident(v) if g.degree(inc.far) >= 4)
        return FLAVORS[big]

    def _classify(self, v: int) -> VertexClass:
        g = self.g
        d = g.degree(v)
        sig = self.signature(v)
        degenerate = self.degenerate(v)
        flavor = self.flavor(v)
        special = False
        if d == 3 and sig == (1, 1, 0) and not degenerate:
            incs = self.paths.incident(v)
            zero = next(inc for inc in incs if inc.k == 0)
            special = g.degree(zero.far) == 3 and any(
                inc.k == 1 and self.flavor(inc.far) == "small" for inc in incs
            )
        light = d == 2 or flavor in ("medium", "large")
        return VertexClass(v, d, sig, flavor, special, light, degenerate)


def classify_vertex(g: Graph, v: int, analysis: Analysis | None = None) -> VertexClass:
    if not 0 <= v < g.n:
        raise ValueError(f"vertex {v} out of range")
    return (analysis or Analysis(g)).cls(v)


# --- configurations -------------------------------------------------------


@dataclass(frozen=True)
class Step:
    """One extension step: greedy coloring of ``vertices`` in order, or a gadget solve."""

    kind: str  # "greedy" | "gadget"
    vertices: tuple[int, ...] = ()
    gadget: str | None = None
    labels: tuple[tuple[str, int], ...] = ()

    def describe(self) -> str:
        if self.kind == "greedy":
            return "greedy " + ",".join(map(str, self.vertices))
        return f"gadget {self.gadget} " + " ".join(f"{lab}={v}" for lab, v in self.labels)


@dataclass(frozen=True, eq=False)
class ConfigurationMatch:
    config_id: str
    anchor: int
    mapping: dict[str, int]
    removal: frozenset[int]
    uncolor: frozenset[int]
    steps: tuple[Step, ...]
    host: Graph = field(repr=False)

    @property
    def extension(self) -> str:
        gad = [s.gadget for s in self.steps if s.kind == "gadget"]
        return f"gadget {gad[0]}" if gad else "greedy"

    def describe(self) -> str:
        parts = [f"{self.config_id} anchor={self.anchor}"]
        parts.append("map " + " ".join(f"{k}={v}" for k, v in self.mapping.items()))
        parts.append("remove " + ",".join(map(str, sorted(self.removal))))
        if self.uncolor:
            parts.append("uncolor " + ",".join(map(str, sorted(self.uncolor))))
        parts.append(self.extension)
        return " | ".join(parts)


def _match(config_id, anchor, mapping, removal, uncolor, steps, g) -> ConfigurationMatch:
    return ConfigurationMatch(
        config_id, anchor, dict(mapping), frozenset(removal), frozenset(uncolor), tuple(steps), g
    )


def _find_l8(a: Analysis):
    g = a.g
    for v in range(g.n):
        if g.degree(v) <= 1:
            yield _match("L8", v, {"v": v}, {v}, (), [Step("greedy", (v,))], g)


def _find_l9(a: Analysis):
    g = a.g
    for v in range(g.n):
        if g.degree(v) != 2:
            continue
        u, w = g.adj[v]
        if g.degree(u) == 2 and g.degree(w) == 2:
            yield _match(
                "L9", v, {"u": u, "v": v, "w": w}, {u, v, w}, (), [Step("greedy", (u, w, v))], g
            )


def _find_l10(a: Analysis):
    g = a.g
    for u in range(g.n):
        if g.degree(u) != 3:
            continue
        for inc in a.incidences(u):
            if inc.k != 2:
                continue
            v, w, x = inc.first, inc.second, inc.far
            yield _match(
                "L10", u, {"u": u, "v": v, "w": w, "x": x}, {v, w}, (), [Step("greedy", (w, v))], g
            )


def _distinct(*xs: int) -> bool:
    return len(set(xs)) == len(xs)


def _find_l11(a: Analysis):
    g = a.g
    for u in range(g.n):
        if a.cls(u).flavor is None:
            continue
        incs = a.incidences(u)
        for via in incs:
            v = via.far
            if a.cls(v).flavor is None:
                continue
            others = [inc for inc in incs if inc is not via]
            short = [inc for inc in others if g.degree(inc.far) < 4]
            if not short:
                continue  # u is large
            to_w = short[0]
            rest = next(inc for inc in others if inc is not to_w)
            u1, u2, u3, w = via.first, to_w.first, rest.first, to_w.far
            if not _distinct(u, v, w, u1, u2, u3, rest.far) or w == v:
                continue
            mapping = {"u": u, "u1": u1, "u2": u2, "u3": u3, "v": v, "w": w}
            steps = [
                Step("greedy", (u3,)),
                Step("gadget", gadget="a", labels=(("u1", u2), ("u2", u), ("u3", u1), ("u4", v))),
            ]
            yield _match("L11", u, mapping, {u, u1, u2, u3}, {v}, steps, g)


def _find_l12(a: Analysis):
    g = a.g
    for u2 in range(g.n):
        if not a.cls(u2).special:
            continue
        ones = [inc for inc in a.incidences(u2) if inc.k == 1]
        for to_small, other in permutations(ones, 2):
            if a.cls(to_small.far).flavor != "small" or g.degree(other.far) != 3:
                continue
            u1, u3, u4, y = other.first, to_small.first, to_small.far, other.far
            if not _distinct(u1, u2, u3, u4, y):
                continue
            mapping = {"u1": u1, "u2": u2, "u3": u3, "u4": u4, "y": y}
            steps = [Step("gadget", gadget="a",
                          labels=(("u1", u1), ("u2", u2), ("u3", u3), ("u4", u4)))]
            yield _match("L12", u2, mapping, {u1, u2, u3}, {u4}, steps, g)


def _pendant_pair(a: Analysis, center: int, toward: int) -> tuple[int, int]:
    """Split the two other 2-neighbors of a (1,1,1)-vertex: far end of degree 3 first."""
    incs = [inc for inc in a.incidences(center) if inc.first != toward]
    incs.sort(key=lambda inc: (a.g.degree(inc.far) >= 4, inc.first))
    return incs[0].first, incs[1].first


def _light_labels(a: Analysis, arms):
    """Labels for the light arms of a 4-vertex.

    ``arms`` is ``[(inc_i, v_i), (inc_j, v_j)]``. A 2-vertex light goes on the
    u4/u5 side when the other light is a (1,1,1)-vertex.
    """
    (ia, va), (ib, vb) = arms
    if a.g.degree(va) != 2 and a.g.degree(vb) == 2:
        (ia, va), (ib, vb) = (ib, vb), (ia, va)
    labels = {"u4": ia.first, "u5": va, "u'3": ib.first, "u''3": vb}
    removal = {ia.first, va, ib.first, vb}
    n111 = 0
    if a.g.degree(vb) == 3:
        labels["v3"], labels["v'3"] = _pendant_pair(a, vb, ib.first)
        removal |= set(a.g.adj[vb])
        n111 += 1
    if a.g.degree(va) == 3:
        labels["v5"], labels["v'5"] = _pendant_pair(a, va, ia.first)
        removal |= set(a.g.adj[va])
        n111 += 1
    return labels, removal, n111


def _second(inc: Incidence) -> int:
    return inc.second if inc.second is not None else inc.far


def _find_l13(a: Analysis):
    g = a.g
    for u in range(g.n):
        if g.degree(u) != 4 or any(g.degree(w) != 2 for w in g.adj[u]):
            continue
        incs = a.incidences(u)
        if len(incs) != 4:
            continue
        far = [_second(inc) for inc in incs]
        for i, j in combinations(range(4), 2):
            if not (a.cls(far[i]).light and a.cls(far[j]).light):
                continue
            for l in range(4):
                if l in (i, j) or g.degree(far[l]) > 3:
                    continue
                m = next(x for x in range(4) if x not in (i, j, l))
                labels, removal, n111 = _light_labels(a, [(incs[i], far[i]), (incs[j], far[j])])
                labels.update({"u3": u, "u1": incs[l].first, "u2": incs[m].first})
                removal |= {u, incs[l].first, incs[m].first}
                gid = "bcd"[n111]
                mapping = {"u": u, "v3": far[l], "v4": far[m]}
                mapping.update({f"gadget.{k}": v for k, v in labels.items()})
                steps = [Step("gadget", gadget=gid, labels=tuple(labels.items()))]
                yield _match("L13", u, mapping, removal, (), steps, g)


def _find_l14(a: Analysis):
    g = a.g
    for u in range(g.n):
        if g.degree(u) != 4:
            continue
        incs = a.incidences(u)
        zero = [inc for inc in incs if inc.k == 0]
        arms = [inc for inc in incs if inc.k >= 1]
        if len(incs) != 4 or len(zero) != 1 or g.degree(zero[0].far) != 3:
            continue
        t = zero[0].far
        far = [_second(inc) for inc in arms]
        for i, j in combinations(range(3), 2):
            if not (a.cls(far[i]).light and a.cls(far[j]).light):
                continue
            l = 3 - i - j
            v3 = far[l]
            c3 = a.cls(v3)
            if not (c3.degree == 2 or c3.special or c3.flavor is not None):
                continue
            labels, removal, n111 = _light_labels(a, [(arms[i], far[i]), (arms[j], far[j])])
            labels.update({"u3": u, "u2": arms[l].first, "u1": v3})
            removal |= {u, arms[l].first, v3}
            uncolor: set[int] = set()
            if c3.degree == 2 or c3.flavor == "huge":
                gid = "efg"[n111]
                if c3.flavor == "huge":
                    removal.discard(v3)
                    uncolor.add(v3)
            else:
                # 2-neighbours of v3 whose thread leads to another 3-vertex
                cands = [
                    inc for inc in a.incidences(v3)
                    if inc.k == 1 and inc.first != arms[l].first and g.degree(inc.far) == 3
                ]
                if not cands:
                    continue
                labels["u0"] = cands[0].first
                removal.add(cands[0].first)
                gid = "hij"[n111]
            mapping = {"u": u, "t": t, "v3": v3}
            mapping.update({f"gadget.{k}": v for k, v in labels.items()})
            steps = [Step("gadget", gadget=gid, labels=tuple(labels.items()))]
            yield _match("L14", u, mapping, removal, uncolor, steps, g)


_DETECTORS = {
    "L8": _find_l8, "L9": _find_l9, "L10": _find_l10, "L11": _find_l11,
    "L12": _find_l12, "L13": _find_l13, "L14": _find_l14,
}


def find_configuration(g: Graph, analysis: Analysis | None = None) -> ConfigurationMatch | None:
    """First reducible configuration in priority order, lowest anchor first."""
    a = analysis or Analysis(g)
    for config_id in CONFIG_IDS:
        m = next(_DETECTORS[config_id](a), None)
        if m is not None:
            return m
    return None


def iter_matches(g: Graph, config_id: str, analysis: Analysis | None = None):
    """Every match of one configuration, in detection order."""
    yield from _DETECTORS[config_id](analysis or Analysis(g))


# --- reduction and extension ----------------------------------------------


class StaleMatch(ValueError):
    pass


class ExtensionError(AssertionError):
    pass


@dataclass(frozen=True)
class Recipe:
    config_id: str
    removal: frozenset[int]
    uncolor: frozenset[int]
    steps: tuple[Step, ...]
    old_ids: tuple[int, ...]  # vertex i of the reduced graph is old_ids[i] in the host


def reduce(g: Graph, m: ConfigurationMatch) -> tuple[Graph, Recipe]:
    if m.host is not g and m.host != g:
        raise StaleMatch("match was computed on a different graph")
    if not m.removal:
        raise StaleMatch("empty removal set")
    smaller, old = g.remove(m.removal)
    return smaller, Recipe(m.config_id, m.removal, m.uncolor, m.steps, tuple(old))


def _remaining(g: Graph, col: list[int | None], v: int, palette: Sequence[int]) -> list[int]:
    seen = {col[w] for w in two_distance_neighbors(g, v) if col[w] is not None}
    return [c for c in palette if c not in seen]


def extend(
    g: Graph, recipe: Recipe, partial: Sequence[int], lists: Sequence[Sequence[int]]
) -> list[int]:
    """Lift a coloring of the reduced graph back to ``g`` using the recipe."""
    col: list[int | None] = [None] * g.n
    for i, c in enumerate(partial):
        col[recipe.old_ids[i]] = c
    for v in recipe.uncolor:
        col[v] = None
    for step in recipe.steps:
        if step.kind == "greedy":
            for v in step.vertices:
                options = _remaining(g, col, v, lists[v])
                if not options:
                    raise ExtensionError(f"{recipe.config_id}: no color left for vertex {v}")
                col[v] = options[0]
            continue
        gad = build_gadget(step.gadget)
        where = dict(step.labels)
        host = [where[lab] for lab in gad.labels]
        sub_lists = []
        for lab, v in zip(gad.labels, host):
            rem = _remaining(g, col, v, lists[v])
            if len(rem) < gad.size(lab):
                raise ExtensionError(
                    f"{recipe.config_id}: vertex {v} ({lab}) keeps {len(rem)} colors, "
                    f"gadget {gad.id} needs {gad.size(lab)}"
                )
            sub_lists.append(rem)
        index = {v: i for i, v in enumerate(host)}
        for i, v in enumerate(host):
            for w in two_distance_neighbors(g, v):
                if w in index and not gad.constraints.has_edge(i, index[w]):
                    raise ExtensionError(
                        f"{recipe.config_id}: host constraint {v}-{w} missing from gadget {gad.id}"
                    )
        found = list_color(gad.constraints, sub_lists)
        if found is None:
            raise ExtensionError(f"{recipe.config_id}: gadget {gad.id} instance not colorable")
        for v, c in zip(host, found):
            col[v] = c
    missing = [v for v in range(g.n) if col[v] is None]
    if missing:
        raise ExtensionError(f"{recipe.config_id}: vertices left uncolored: {missing}")
    return col  # type: ignore[return-value]


# --- constructive colorer -------------------------------------------------


class HypothesisError(ValueError):
    def __init__(self, problems: list[str]):
        super().__init__("hypotheses violated: " + "; ".join(problems))
        self.problems = problems


class TheoremFalsified(RuntimeError):
    """No configuration found on a graph above the base size. Expected unreachable."""

    def __init__(self, g: Graph, original_ids: Sequence[int]):
        super().__init__(
            f"theorem-falsifying instance: no reducible configuration in a graph with "
            f"{g.n} vertices\n{dump_graph(g)}"
        )
        self.graph = g
        self.original_ids = list(original_ids)


@dataclass
class ConstructiveResult:
    coloring: list[int]
    trace: list[str]


def check_hypotheses(
    g: Graph, lists: Sequence[Sequence[int]], girth_9_ok: bool = False
) -> list[str]:
    problems = []
    if len(lists) != g.n:
        problems.append(f"{len(lists)} lists for {g.n} vertices")
    short = [v for v, lst in enumerate(lists) if len(set(lst)) < 6]
    if short:
        problems.append(f"lists shorter than 6 at vertices {short[:10]}")
    if g.max_degree() > 4:
        problems.append(f"maximum degree {g.max_degree()} > 4")
    need = 9 if girth_9_ok else 10
    gg = girth(g)
    if gg < need:
        problems.append(f"girth {gg} < {need}")
    if g.n and mad_exact(g) >= Fraction(5, 2):
        problems.append(f"mad {mad_exact(g)} >= 5/2")
    return problems


def color_constructive(
    g: Graph,
    lists: Sequence[Sequence[int]],
    girth_9_ok: bool = False,
    base_threshold: int = BASE_THRESHOLD,
) -> ConstructiveResult:
    """Color ``g`` from ``lists`` by peeling reducible configurations."""
    problems = check_hypotheses(g, lists, girth_9_ok)
    if problems:
        raise HypothesisError(problems)
    lists = [sorted(set(lst)) for lst in lists]
    trace: list[str] = []
    stack: list[tuple[Graph, list[int], Recipe]] = []
    cur, orig = g, list(range(g.n))
    depth = 0
    while cur.n > base_threshold:
        m = find_configuration(cur)
        if m is None:
            raise TheoremFalsified(cur, orig)
        trace.append(
            f"level {depth}: n={cur.n} {m.config_id} anchor={orig[m.anchor]} "
            f"remove={sorted(orig[v] for v in m.removal)}"
            + (f" uncolor={sorted(orig[v] for v in m.uncolor)}" if m.uncolor else "")
            + f" {m.extension}"
        )
        smaller, recipe = reduce(cur, m)
        stack.append((cur, orig, recipe))
        cur, orig = smaller, [orig[i] for i in recipe.old_ids]
        depth += 1
    trace.append(f"level {depth}: n={cur.n} base case")
    col = list_color(square(cur), [lists[v] for v in orig]) if cur.n else []
    if col is None:
        raise ExtensionError(f"base case with {cur.n} vertices has no list coloring")
    while stack:
        host, host_orig, recipe = stack.pop()
        col = extend(host, recipe, col, [lists[v] for v in host_orig])
    return ConstructiveResult(col, trace)
