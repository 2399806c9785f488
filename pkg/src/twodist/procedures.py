"""Replays of the hand-written case analyses that color each gadget.

Each procedure tests its claims in order. When a claim's hypothesis fails,
the matching early exit colors the gadget in a fixed order; otherwise the
final order runs. "Color x" always takes the smallest color of L(x) not
already used on a colored vertex within distance two.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Callable, Iterable, Mapping, Sequence

from .coloring import list_color, random_assignment, verify_coloring
from .gadgets import GADGET_IDS, MIRROR, Gadget, build_gadget


class ProcedureFailure(RuntimeError):
    def __init__(self, gid: str, message: str, trace: list[str]):
        super().__init__(f"gadget {gid}: {message}")
        self.gid = gid
        self.trace = trace


@dataclass
class ProcedureResult:
    gid: str
    coloring: list[int]
    branch: str
    trace: list[str]

    def by_label(self) -> dict[str, int]:
        gad = build_gadget(self.gid)
        return dict(zip(gad.labels, self.coloring))


class _Run:
    def __init__(self, gid: str, lists: Mapping[str, Iterable[int]], trace: list[str], depth: int = 0):
        self.gad: Gadget = build_gadget(gid)
        self.gid = gid
        self.L: dict[str, list[int]] = {}
        for lab, size in self.gad.profile_map().items():
            lst = sorted(set(lists[lab]))
            if len(lst) < size:
                self.fail(f"list of {lab} has {len(lst)} colors, needs {size}", trace)
            self.L[lab] = lst[:size]
        self.col: dict[str, int] = {}
        self.trace = trace
        self.pad = "  " * depth
        self.depth = depth
        self.branch = ""

    def fail(self, message: str, trace: list[str] | None = None):
        raise ProcedureFailure(self.gid, message, list(self.trace if trace is None else trace))

    def log(self, text: str) -> None:
        self.trace.append(f"{self.pad}{self.gid}: {text}")

    def seen(self, x: str) -> set[int]:
        gad = self.gad
        nbrs = gad.constraints.adj[gad.index(x)]
        return {self.col[gad.labels[w]] for w in nbrs if gad.labels[w] in self.col}

    def free(self, x: str) -> list[int]:
        used = self.seen(x)
        return [c for c in self.L[x] if c not in used]

    def paint(self, *xs: str, within: Iterable[int] | None = None) -> None:
        for x in xs:
            options = self.free(x)
            if within is not None:
                allowed = set(within)
                options = [c for c in options if c in allowed]
            if not options:
                self.fail(f"no color left for {x}")
            self.col[x] = options[0]
            self.log(f"color {x} = {options[0]}")

    def paint_same(self, c: int, *xs: str) -> None:
        for x in xs:
            if c not in self.free(x):
                self.fail(f"color {c} unavailable for {x}")
            self.col[x] = c
            self.log(f"color {x} = {c}")

    def claim(self, name: str, holds: bool) -> bool:
        self.log(f"claim {name}: {'holds' if holds else 'fails'}")
        if not holds:
            self.branch = name
        return holds

    def sub(self, gid: str, mapping: Callable[[str], str]) -> None:
        """Color the still-uncolored part through a smaller gadget."""
        inner = build_gadget(gid)
        lists = {lab: self.free(mapping(lab)) for lab in inner.labels}
        self.log(f"delegate to {gid}")
        run = _Run(gid, lists, self.trace, self.depth + 1)
        _PROCS[gid](run)
        for lab, c in run.col.items():
            self.col[mapping(lab)] = c

    def done(self) -> list[int]:
        if not self.branch:
            self.branch = "final"
        return [self.col[lab] for lab in self.gad.labels]


def _same(x: str) -> str:
    return x


def _mirror(x: str) -> str:
    return MIRROR.get(x, x)


def _proc_a(r: _Run) -> None:
    L = r.L
    if not r.claim("L(u1)=L(u2)", L["u1"] == L["u2"]):
        r.paint("u2", within=set(L["u2"]) - set(L["u1"]))
        r.paint("u4", "u3", "u1")
    else:
        r.paint("u3", within=set(L["u3"]) - set(L["u2"]))
        r.paint("u4", "u2", "u1")


def _proc_b(r: _Run) -> None:
    L = {k: set(v) for k, v in r.L.items()}
    common = L["u5"] & L["u1"]
    if not r.claim("L(u5)&L(u1)=0", not common):
        r.paint_same(min(common), "u1", "u5")
        r.paint("u2", "u3", "u''3", "u'3", "u4")
        return
    common = L["u5"] & L["u2"]
    if not r.claim("L(u5)&L(u2)=0", not common):
        r.paint_same(min(common), "u2", "u5")
        r.paint("u1", "u3", "u''3", "u'3", "u4")
        return
    common = L["u5"] & L["u'3"]
    if not r.claim("L(u5)&L(u'3)=0", not common):
        r.paint_same(min(common), "u'3", "u5")
        r.paint("u''3", "u3", "u2", "u1", "u4")
        return
    common = L["u5"] & L["u3"]
    if not r.claim("L(u5)&L(u3)=0", not common):
        r.paint_same(min(common), "u3")
        r.paint("u5", "u''3", "u2", "u1", "u4", "u'3")
        return
    r.paint("u2", "u1", "u3", "u''3", "u'3", "u4", "u5")


def _one_pendant_pair(r: _Run, inner: str, final: Sequence[str]) -> None:
    """Shared shape of the three cases with one pair v3, v'3 hanging off u''3."""
    L = {k: set(v) for k, v in r.L.items()}
    if not r.claim("L(v'3)<=L(v3)", L["v'3"] <= L["v3"]):
        r.paint("v'3", within=L["v'3"] - L["v3"])
        r.sub(inner, _same)
        r.paint("v3")
        return
    r.paint("u''3", within=L["u''3"] - L["v3"])
    r.paint(*final)


def _two_pendant_pairs(
    r: _Run, inner: str, u5_avoid: Sequence[str], final: Sequence[str]
) -> None:
    """Shared shape of the three cases with pairs on both u''3 and u5."""
    L = {k: set(v) for k, v in r.L.items()}
    if not r.claim("L(v'5)<=L(v5)", L["v'5"] <= L["v5"]):
        r.paint("v'5", within=L["v'5"] - L["v5"])
        r.sub(inner, _same)
        r.paint("v5")
        return
    if not r.claim("L(v'3)<=L(v3)", L["v'3"] <= L["v3"]):
        r.paint("v'3", within=L["v'3"] - L["v3"])
        r.sub(inner, _mirror)
        r.paint("v3")
        return
    r.paint("u''3", within=L["u''3"] - L["v3"])
    avoid = set().union(*(L[x] for x in u5_avoid))
    options = L["u5"] - avoid
    if not options:
        r.fail("L(u5) is covered by " + " and ".join(f"L({x})" for x in u5_avoid))
    r.paint("u5", within=options)
    r.paint(*final)


def _proc_c(r: _Run) -> None:
    _one_pendant_pair(r, "b", ["u2", "u1", "u3", "u5", "u4", "u'3", "v'3", "v3"])


def _proc_d(r: _Run) -> None:
    _two_pendant_pairs(
        r, "c", ["v5"], ["u3", "u2", "u1", "u'3", "v'3", "v3", "u4", "v'5", "v5"]
    )


def _proc_e(r: _Run) -> None:
    L = {k: set(v) for k, v in r.L.items()}
    common = L["u2"] & L["u5"]
    if not r.claim("L(u2)&L(u5)=0", not common):
        r.paint_same(min(common), "u2", "u5")
        r.paint("u1", "u3", "u''3", "u'3", "u4")
        return
    common = L["u2"] & L["u''3"]
    if not r.claim("L(u2)&L(u''3)=0", not common):
        r.paint_same(min(common), "u2", "u''3")
        r.paint("u1", "u3", "u5", "u4", "u'3")
        return
    spare = L["u3"] - (L["u5"] | L["u''3"])
    if not r.claim("L(u3)<=L(u5)|L(u''3)", not spare):
        r.paint_same(min(spare), "u3")
        r.paint("u1", "u2", "u'3", "u''3", "u4", "u5")
        return
    common = L["u'3"] & L["u5"]
    if not r.claim("L(u'3)&L(u5)=0", not common):
        r.paint_same(min(common), "u'3", "u5")
        r.paint("u''3", "u3", "u1", "u2", "u4")
        return
    common = L["u4"] & L["u''3"]
    if not r.claim("L(u4)&L(u''3)=0", not common):
        r.paint_same(min(common), "u4", "u''3")
        r.paint("u5", "u3", "u1", "u2", "u'3")
        return
    shared = L["u5"] & L["u3"]
    if not shared:
        r.fail("L(u3) and L(u5) are disjoint although L(u3) lies in L(u5)|L(u''3)")
    r.paint("u3", within=shared)
    r.paint("u1", "u2", "u5", "u4", "u''3", "u'3")


def _proc_f(r: _Run) -> None:
    _one_pendant_pair(r, "e", ["u1", "u3", "u2", "u5", "u4", "u'3", "v'3", "v3"])


def _proc_g(r: _Run) -> None:
    _two_pendant_pairs(
        r, "f", ["v5"], ["u3", "u1", "u2", "u'3", "v'3", "v3", "u4", "v'5", "v5"]
    )


def _proc_h(r: _Run) -> None:
    L = {k: set(v) for k, v in r.L.items()}
    if not r.claim("L(u0)=L(u1)", L["u0"] == L["u1"]):
        r.paint("u0", within=L["u0"] - L["u1"])
        r.sub("e", _same)
        return
    # u2 avoids L(u1) so that u1 and u0 can always be finished last
    r.L["u2"] = sorted(L["u2"] - L["u1"])
    r.log(f"restrict L(u2) to {r.L['u2']}")
    u2 = set(r.L["u2"])
    common = L["u5"] & u2
    if not r.claim("L(u5)&L'(u2)=0", not common):
        r.paint_same(min(common), "u2", "u5")
        r.paint("u3", "u''3", "u'3", "u4")
    else:
        common = L["u5"] & L["u'3"]
        if not r.claim("L(u5)&L(u'3)=0", not common):
            r.paint_same(min(common), "u'3", "u5")
            r.paint("u''3", "u3", "u2", "u4")
        else:
            common = L["u5"] & L["u3"]
            if not r.claim("L(u5)&L(u3)=0", not common):
                r.paint_same(min(common), "u3")
                r.paint("u5", "u''3", "u2", "u4", "u'3")
            else:
                r.paint("u2", "u3", "u''3", "u'3", "u4", "u5")
    r.paint("u1", "u0")


def _proc_i(r: _Run) -> None:
    _one_pendant_pair(r, "h", ["u0", "u1", "u3", "u2", "u5", "u4", "u'3", "v'3", "v3"])


def _proc_j(r: _Run) -> None:
    _two_pendant_pairs(
        r, "i", ["v5", "v'5"], ["u3", "u1", "u0", "u2", "u'3", "v'3", "v3", "u4", "v'5", "v5"]
    )


_PROCS: dict[str, Callable[[_Run], None]] = {
    "a": _proc_a, "b": _proc_b, "c": _proc_c, "d": _proc_d, "e": _proc_e,
    "f": _proc_f, "g": _proc_g, "h": _proc_h, "i": _proc_i, "j": _proc_j,
}

# every branch label a procedure can report, for coverage accounting
BRANCHES: dict[str, tuple[str, ...]] = {
    "a": ("L(u1)=L(u2)", "final"),
    "b": ("L(u5)&L(u1)=0", "L(u5)&L(u2)=0", "L(u5)&L(u'3)=0", "L(u5)&L(u3)=0", "final"),
    "c": ("L(v'3)<=L(v3)", "final"),
    "d": ("L(v'5)<=L(v5)", "L(v'3)<=L(v3)", "final"),
    "e": ("L(u2)&L(u5)=0", "L(u2)&L(u''3)=0", "L(u3)<=L(u5)|L(u''3)",
          "L(u'3)&L(u5)=0", "L(u4)&L(u''3)=0", "final"),
    "f": ("L(v'3)<=L(v3)", "final"),
    "g": ("L(v'5)<=L(v5)", "L(v'3)<=L(v3)", "final"),
    "h": ("L(u0)=L(u1)", "L(u5)&L'(u2)=0", "L(u5)&L(u'3)=0", "L(u5)&L(u3)=0", "final"),
    "i": ("L(v'3)<=L(v3)", "final"),
    "j": ("L(v'5)<=L(v5)", "L(v'3)<=L(v3)", "final"),
}


def extend_procedure(gid: str, lists: Mapping[str, Iterable[int]] | Sequence[Iterable[int]]) -> ProcedureResult:
    """Color gadget ``gid`` from ``lists`` (keyed by label, or indexed by vertex).

    Raises :class:`ProcedureFailure` with the trace if a step cannot be carried out.
    """
    gad = build_gadget(gid)
    if not isinstance(lists, Mapping):
        lists = dict(zip(gad.labels, lists))
    trace: list[str] = []
    run = _Run(gid, lists, trace)
    _PROCS[gid](run)
    coloring = run.done()
    bad = verify_coloring(gad.constraints, coloring, radius=1)
    if bad is not None:
        u, v = (gad.labels[i] for i in bad)
        run.fail(f"{u} and {v} received the same color")
    for lab, c in zip(gad.labels, coloring):
        if c not in run.L[lab] and c not in set(lists[lab]):
            run.fail(f"{lab} received {c}, outside its list")
    return ProcedureResult(gid, coloring, run.branch, trace)


@dataclass
class CrossCheckReport:
    gid: str
    trials: int
    seed: int
    valid: int = 0
    failures: list[tuple[list[list[int]], str]] = field(default_factory=list)
    coverage: Counter = field(default_factory=Counter)

    @property
    def ok(self) -> bool:
        return not self.failures and self.valid == self.trials

    @property
    def uncovered(self) -> list[str]:
        return [b for b in BRANCHES[self.gid] if not self.coverage[b]]

    def render(self) -> str:
        lines = [f"gadget {self.gid} trials {self.trials} seed {self.seed}",
                 f"valid {self.valid}/{self.trials}"]
        lines += [f"branch {b} : {self.coverage[b]}" for b in BRANCHES[self.gid]]
        for lists, why in self.failures[:5]:
            lines.append(f"failure {why} lists {lists}")
        lines.append(f"RESULT: {'PASS' if self.ok else 'FAIL'}")
        return "\n".join(lines) + "\n"


def planted_assignment(rng: random.Random, profile: Sequence[int]) -> list[list[int]]:
    """Random lists with planted overlaps.

    Vertices are visited in random order. Each list is drawn from one or two
    earlier lists (padded with fresh colors), made entirely of fresh colors,
    or sampled from a small universe. Uniform sampling almost never produces
    the nested and disjoint patterns that the deeper claims need.
    """
    n = len(profile)
    order = list(range(n))
    rng.shuffle(order)
    out: list[list[int]] = [[] for _ in range(n)]
    done: list[int] = []
    fresh = 0
    for v in order:
        s = profile[v]
        roll = rng.random()
        if done and roll < 0.4:
            pool = set(out[rng.choice(done)])
            if rng.random() < 0.5:
                pool |= set(out[rng.choice(done)])
            extra = list(range(fresh, fresh + max(0, s - len(pool))))
            fresh += len(extra)
            lst = rng.sample(sorted(pool), min(s, len(pool))) + extra
        elif roll < 0.7:
            lst = list(range(fresh, fresh + s))
            fresh += s
        else:
            universe = max(fresh, s) + rng.randint(0, 2)
            lst = rng.sample(range(universe), s)
            fresh = max(fresh, universe)
        out[v] = sorted(lst)
        done.append(v)
    return out


def sample_lists(rng: random.Random, profile: Sequence[int]) -> list[list[int]]:
    if rng.random() < 0.75:
        return planted_assignment(rng, profile)
    return random_assignment(rng, profile)


def cross_check_procedure(gid: str, trials: int = 1000, seed: int = 0) -> CrossCheckReport:
    """Compare the procedure with the backtracking solver on random list assignments."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    gad = build_gadget(gid)
    rng = random.Random(seed)
    rep = CrossCheckReport(gid, trials, seed)
    for _ in range(trials):
        lists = sample_lists(rng, gad.profile)
        solvable = list_color(gad.constraints, lists) is not None
        try:
            res = extend_procedure(gid, lists)
        except ProcedureFailure as exc:
            rep.failures.append((lists, str(exc)))
            continue
        if not solvable:
            rep.failures.append((lists, "procedure colored an instance the solver rejects"))
            continue
        rep.valid += 1
        rep.coverage[res.branch] += 1
    return rep


__all__ = [
    "BRANCHES", "CrossCheckReport", "ProcedureFailure", "ProcedureResult",
    "cross_check_procedure", "extend_procedure", "GADGET_IDS",
]
