"""Exact proper, 2-distance and list coloring, and choosability checking."""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from itertools import combinations
from math import comb
from typing import Iterable, Sequence

from .graph import Graph, square

DEFAULT_BUDGET = 10**8


class PartialColoringError(ValueError):
    def __init__(self, missing: list[int]):
        super().__init__(f"coloring is not total; unassigned vertices: {missing}")
        self.missing = missing


class BudgetExceeded(RuntimeError):
    def __init__(self, bound: int, budget: int):
        super().__init__(
            f"exhaustive enumeration needs {bound} assignments, over the budget of {budget}; "
            "use randomized mode"
        )
        self.bound = bound
        self.budget = budget


def verify_coloring(
    g: Graph, coloring: Sequence[int | None], radius: int = 1
) -> tuple[int, int] | None:
    """Return None if valid, else one offending pair ``(u, v)`` with ``u < v``."""
    if radius not in (1, 2):
        raise ValueError("radius must be 1 or 2")
    missing = [v for v in range(g.n) if coloring[v] is None]
    if missing:
        raise PartialColoringError(missing)
    h = square(g) if radius == 2 else g
    for u, v in h.edges():
        if coloring[u] == coloring[v]:
            return (u, v)
    return None


def _search(
    adj: Sequence[Sequence[int]], domains: list[int], symmetric: bool
) -> list[int] | None:
    """Backtracking over bitmask domains.

    Picks the uncolored vertex with the fewest remaining colors (for uniform
    domains this is highest saturation), ties by degree then id. With
    ``symmetric`` set, colors are interchangeable and only colors up to one
    past the largest used are tried.
    """
    n = len(adj)
    color = [-1] * n
    counts = [dict() for _ in range(n)]
    blocked = [0] * n

    def assign(v: int, c: int) -> None:
        color[v] = c
        bit = 1 << c
        for w in adj[v]:
            cnt = counts[w].get(c, 0)
            counts[w][c] = cnt + 1
            if cnt == 0:
                blocked[w] |= bit

    def unassign(v: int, c: int) -> None:
        color[v] = -1
        bit = 1 << c
        for w in adj[v]:
            cnt = counts[w][c] - 1
            counts[w][c] = cnt
            if cnt == 0:
                blocked[w] &= ~bit

    def rec(left: int, top: int) -> bool:
        if left == 0:
            return True
        best = -1
        best_key = None
        for v in range(n):
            if color[v] != -1:
                continue
            avail = domains[v] & ~blocked[v]
            if avail == 0:
                return False
            key = (avail.bit_count(), -len(adj[v]), v)
            if best_key is None or key < best_key:
                best, best_key = v, key
        avail = domains[best] & ~blocked[best]
        if symmetric:
            avail &= (1 << (top + 2)) - 1
        while avail:
            low = avail & -avail
            c = low.bit_length() - 1
            avail ^= low
            assign(best, c)
            if rec(left - 1, max(top, c)):
                return True
            unassign(best, c)
        return False

    return color if rec(n, -1) else None


def chromatic_exact(g: Graph, budget: int) -> list[int] | None:
    """A proper coloring with colors ``0..budget-1``, or None when none exists."""
    if budget < 1:
        raise ValueError("budget must be >= 1")
    if g.n == 0:
        return []
    return _search(g.adj, [(1 << budget) - 1] * g.n, symmetric=True)


def greedy_coloring(g: Graph, order: Iterable[int] | None = None) -> list[int]:
    color: list[int] = [-1] * g.n
    for v in order if order is not None else range(g.n):
        used = {color[w] for w in g.adj[v]}
        c = 0
        while c in used:
            c += 1
        color[v] = c
    return color


def _greedy_clique(g: Graph) -> int:
    best = 1 if g.n else 0
    for v in range(g.n):
        clique = [v]
        for w in sorted(g.adj[v], key=lambda x: -len(g.adj[x])):
            if all(g.has_edge(w, x) for x in clique):
                clique.append(w)
        best = max(best, len(clique))
    return best


def chromatic_number(g: Graph) -> tuple[int, list[int]]:
    if g.n == 0:
        return 0, []
    if g.m == g.n * (g.n - 1) // 2:
        return g.n, list(range(g.n))
    upper = greedy_coloring(g)
    ub = max(upper) + 1
    for k in range(_greedy_clique(g), ub):
        found = chromatic_exact(g, k)
        if found is not None:
            return k, found
    return ub, upper


def two_distance_chromatic(g: Graph) -> tuple[int, list[int]]:
    """Chromatic number of the square of ``g`` and a witness coloring."""
    return chromatic_number(square(g))


def greedy_two_distance(g: Graph) -> list[int]:
    return greedy_coloring(square(g))


def list_color(constraints: Graph, lists: Sequence[Iterable[int]]) -> list[int] | None:
    """A coloring picking ``c(v)`` from ``lists[v]`` with no monochromatic edge, or None."""
    if len(lists) != constraints.n:
        raise ValueError("one list per vertex is required")
    sets = [sorted(set(lst)) for lst in lists]
    palette = sorted({c for lst in sets for c in lst})
    index = {c: i for i, c in enumerate(palette)}
    domains = []
    for lst in sets:
        mask = 0
        for c in lst:
            mask |= 1 << index[c]
        domains.append(mask)
    found = _search(constraints.adj, domains, symmetric=False)
    if found is None:
        return None
    return [palette[i] for i in found]


@dataclass
class ChoosabilityReport:
    choosable: bool
    mode: str
    checked: int
    bound: int | None = None
    seed: int | None = None
    counterexample: list[list[int]] | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def verdict(self) -> str:
        if not self.choosable:
            return "NOT_CHOOSABLE"
        return "CHOOSABLE" if self.mode == "exhaustive" else "NO_FAILURE_FOUND"


def enumeration_bound(profile: Sequence[int]) -> int:
    """Exact number of list assignments the canonical enumeration visits."""
    # ways[k]: number of prefixes that have introduced k distinct colors
    ways = {0: 1}
    for s in profile:
        nxt: dict[int, int] = {}
        for k, w in ways.items():
            for new in range(s + 1):
                old = s - new
                if old > k:
                    continue
                nxt[k + new] = nxt.get(k + new, 0) + w * comb(k, old)
        ways = nxt
    return sum(ways.values())


def canonical_assignments(profile: Sequence[int]):
    """List assignments in first-use order: new colors are always the next unused integers.

    Every assignment is a renaming of at least one assignment produced here.
    """
    n = len(profile)
    current: list[list[int]] = []

    def rec(i: int, used: int):
        if i == n:
            yield [list(x) for x in current]
            return
        s = profile[i]
        for new in range(s + 1):
            old = s - new
            if old > used:
                continue
            fresh = list(range(used, used + new))
            for keep in combinations(range(used), old):
                current.append(list(keep) + fresh)
                yield from rec(i + 1, used + new)
                current.pop()

    yield from rec(0, 0)


def random_assignment(rng: random.Random, profile: Sequence[int]) -> list[list[int]]:
    universe = rng.randint(max(profile), sum(profile))
    return [sorted(rng.sample(range(universe), s)) for s in profile]


def random_lists(rng: random.Random, n: int, size: int = 6, palette: int = 9) -> list[list[int]]:
    """``n`` random ``size``-subsets of a small palette, so that lists overlap heavily."""
    return [sorted(rng.sample(range(palette), size)) for _ in range(n)]


def check_choosable(
    constraints: Graph,
    profile: Sequence[int],
    mode: str = "exhaustive",
    trials: int = 10_000,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
) -> ChoosabilityReport:
    if len(profile) != constraints.n:
        raise ValueError("profile length must match the vertex count")
    if any(s < 1 for s in profile):
        raise ValueError("profile sizes must be >= 1")
    if mode == "exhaustive":
        bound = enumeration_bound(profile)
        if bound > budget:
            raise BudgetExceeded(bound, budget)
        checked = 0
        for lists in canonical_assignments(profile):
            checked += 1
            if list_color(constraints, lists) is None:
                return ChoosabilityReport(False, mode, checked, bound=bound, counterexample=lists)
        return ChoosabilityReport(True, mode, checked, bound=bound)
    if mode == "randomized":
        rng = random.Random(seed)
        for t in range(1, trials + 1):
            lists = random_assignment(rng, profile)
            if list_color(constraints, lists) is None:
                return ChoosabilityReport(False, mode, t, seed=seed, counterexample=lists)
        return ChoosabilityReport(True, mode, trials, seed=seed)
    raise ValueError(f"unknown mode {mode!r}")


def format_lists(lists: Sequence[Iterable[int]]) -> str:
    return "".join(f"{v}: {','.join(str(c) for c in sorted(lst))}\n" for v, lst in enumerate(lists))


def parse_lists(text: str, n: int | None = None) -> list[list[int]]:
    found: dict[int, list[int]] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        head, sep, tail = line.partition(":")
        try:
            if not sep:
                raise ValueError
            v = int(head)
            colors = [int(c) for c in tail.split(",") if c.strip()]
        except ValueError:
            raise ValueError(f"line {lineno}: expected 'v: c1,c2,...', got {raw!r}") from None
        if not colors:
            raise ValueError(f"line {lineno}: empty list for vertex {v}")
        if any(c < 0 for c in colors):
            raise ValueError(f"line {lineno}: colors must be non-negative")
        found[v] = sorted(set(colors))
    size = n if n is not None else (max(found) + 1 if found else 0)
    missing = [v for v in range(size) if v not in found]
    if missing:
        raise ValueError(f"no list given for vertices {missing}")
    return [found[v] for v in range(size)]


def format_coloring(coloring: Sequence[int]) -> str:
    return "".join(f"{v} {c}\n" for v, c in enumerate(coloring))


def parse_coloring(text: str) -> list[int]:
    pairs = {}
    for raw in text.splitlines():
        if raw.strip() and not raw.startswith("#"):
            v, c = raw.split()
            pairs[int(v)] = int(c)
    return [pairs[v] for v in range(len(pairs))]
