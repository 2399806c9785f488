"""The ten small list-colorable configurations, labelled a..j.

Each gadget is a tree on labelled anchors with a minimum list size per
vertex. Its constraint graph is the square of the tree.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .coloring import ChoosabilityReport, check_choosable
from .graph import Graph, dump_graph, square

GADGET_IDS = tuple("abcdefghij")

# canonical label order; each gadget uses the subset it needs
LABEL_ORDER = ("u0", "u1", "u2", "u3", "u4", "u5", "u'3", "u''3", "v3", "v'3", "v5", "v'5")

# swapping the two arms at u3 is an automorphism of every gadget from (b) on
MIRROR = {
    "u4": "u'3", "u'3": "u4",
    "u5": "u''3", "u''3": "u5",
    "v5": "v3", "v3": "v5",
    "v'5": "v'3", "v'3": "v'5",
}

_B_EDGES = [("u1", "u3"), ("u2", "u3"), ("u3", "u4"), ("u4", "u5"), ("u3", "u'3"), ("u'3", "u''3")]
_E_EDGES = [("u1", "u2"), ("u2", "u3"), ("u3", "u4"), ("u4", "u5"), ("u3", "u'3"), ("u'3", "u''3")]
_H_EDGES = [("u0", "u1")] + _E_EDGES
_TOP = [("u''3", "v3"), ("u''3", "v'3")]
_SIDE = [("u5", "v5"), ("u5", "v'5")]

_SPECS: dict[str, tuple[list[tuple[str, str]], dict[str, int]]] = {
    "a": (
        [("u1", "u2"), ("u2", "u3"), ("u3", "u4")],
        {"u1": 2, "u2": 2, "u3": 3, "u4": 2},
    ),
    "b": (
        _B_EDGES,
        {"u1": 3, "u2": 2, "u3": 3, "u4": 5, "u5": 2, "u'3": 5, "u''3": 2},
    ),
    "c": (
        _B_EDGES + _TOP,
        {"u1": 3, "u2": 2, "u3": 4, "u4": 5, "u5": 2, "u'3": 6, "u''3": 4, "v3": 3, "v'3": 2},
    ),
    "d": (
        _B_EDGES + _TOP + _SIDE,
        {"u1": 3, "u2": 2, "u3": 4, "u4": 6, "u5": 4, "u'3": 6, "u''3": 4,
         "v3": 3, "v'3": 2, "v5": 3, "v'5": 2},
    ),
    "e": (
        _E_EDGES,
        {"u1": 2, "u2": 3, "u3": 3, "u4": 4, "u5": 2, "u'3": 4, "u''3": 2},
    ),
    "f": (
        _E_EDGES + _TOP,
        {"u1": 2, "u2": 3, "u3": 3, "u4": 4, "u5": 2, "u'3": 5, "u''3": 4, "v3": 3, "v'3": 2},
    ),
    "g": (
        _E_EDGES + _TOP + _SIDE,
        {"u1": 2, "u2": 3, "u3": 3, "u4": 5, "u5": 4, "u'3": 5, "u''3": 4,
         "v3": 3, "v'3": 2, "v5": 3, "v'5": 2},
    ),
    "h": (
        _H_EDGES,
        {"u0": 2, "u1": 2, "u2": 4, "u3": 3, "u4": 4, "u5": 2, "u'3": 4, "u''3": 2},
    ),
    "i": (
        _H_EDGES + _TOP,
        {"u0": 2, "u1": 2, "u2": 4, "u3": 3, "u4": 4, "u5": 2, "u'3": 5, "u''3": 4,
         "v3": 3, "v'3": 2},
    ),
    "j": (
        _H_EDGES + _TOP + _SIDE,
        {"u0": 2, "u1": 2, "u2": 4, "u3": 3, "u4": 5, "u5": 4, "u'3": 5, "u''3": 4,
         "v3": 3, "v'3": 2, "v5": 3, "v'5": 2},
    ),
}

# discrepancies between a figure and the written case analysis, surfaced in reports
NOTES = {
    "e": ["case (v), first claim: the written order ends with 'v4', which is not a vertex "
          "of this gadget; u4 is used"],
}


class UnknownGadget(KeyError):
    pass


@dataclass(frozen=True)
class Gadget:
    id: str
    labels: tuple[str, ...]
    graph: Graph
    profile: tuple[int, ...]
    constraints: Graph

    def index(self, label: str) -> int:
        return self.labels.index(label)

    def size(self, label: str) -> int:
        return self.profile[self.index(label)]

    def profile_map(self) -> dict[str, int]:
        return dict(zip(self.labels, self.profile))


@lru_cache(maxsize=None)
def build_gadget(gid: str) -> Gadget:
    if gid not in _SPECS:
        raise UnknownGadget(f"unknown gadget {gid!r}; expected one of {', '.join(GADGET_IDS)}")
    edges, sizes = _SPECS[gid]
    labels = tuple(lab for lab in LABEL_ORDER if lab in sizes)
    ix = {lab: i for i, lab in enumerate(labels)}
    graph = Graph.from_edges(len(labels), [(ix[a], ix[b]) for a, b in edges])
    profile = tuple(sizes[lab] for lab in labels)
    return Gadget(gid, labels, graph, profile, square(graph))


@dataclass
class GadgetReport:
    gadget: Gadget
    profile: tuple[int, ...]
    result: ChoosabilityReport
    notes: list[str]

    def render(self) -> str:
        r = self.result
        lines = [
            f"gadget {self.gadget.id}",
            "profile " + " ".join(f"{lab}={s}" for lab, s in zip(self.gadget.labels, self.profile)),
            f"mode {r.mode}",
            f"checked {r.checked}",
        ]
        if r.bound is not None:
            lines.append(f"bound {r.bound}")
        if r.seed is not None:
            lines.append(f"seed {r.seed}")
        if r.counterexample is not None:
            lines.append("counterexample")
            for lab, lst in zip(self.gadget.labels, r.counterexample):
                lines.append(f"  {lab}: {','.join(map(str, lst))}")
        lines.extend(f"note {n}" for n in self.notes)
        lines.append(f"RESULT: {r.verdict}")
        return "\n".join(lines) + "\n"


def verify_gadget(
    gid: str,
    mode: str = "exhaustive",
    trials: int = 10_000,
    seed: int = 0,
    profile: tuple[int, ...] | None = None,
    budget: int | None = None,
) -> GadgetReport:
    """Check choosability of a gadget's square at its profile (or an override)."""
    gad = build_gadget(gid)
    prof = tuple(profile) if profile is not None else gad.profile
    kwargs = {} if budget is None else {"budget": budget}
    rep = check_choosable(gad.constraints, prof, mode=mode, trials=trials, seed=seed, **kwargs)
    return GadgetReport(gad, prof, rep, list(NOTES.get(gid, [])))


def show(gid: str) -> str:
    """Edge list of the gadget tree, followed by its labels and sizes as comment lines."""
    gad = build_gadget(gid)
    out = [f"# gadget {gid}", dump_graph(gad.graph).rstrip("\n"), "# vertex label size"]
    out += [f"# {i} {lab} {s}" for i, (lab, s) in enumerate(zip(gad.labels, gad.profile))]
    return "\n".join(out) + "\n"
