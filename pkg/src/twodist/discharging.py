"""Charges, redistribution rules and per-vertex non-negativity certificates.

All arithmetic uses :class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .graph import Graph, mad_exact
from .reducibility import Analysis

ONE = Fraction(1)
HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)
ZERO = Fraction(0)


class DischargingError(ValueError):
    pass


@dataclass(frozen=True)
class Transfer:
    giver: int
    receiver: int
    amount: Fraction
    rule: str
    context: tuple[int, ...]  # the thread the charge travels along


@dataclass
class ChargeLedger:
    initial: dict[int, Fraction]
    transfers: list[Transfer] = field(default_factory=list)
    final: dict[int, Fraction] = field(default_factory=dict)

    @property
    def conserved(self) -> bool:
        return sum(self.final.values(), ZERO) == sum(self.initial.values(), ZERO)

    def total(self) -> Fraction:
        return sum(self.final.values(), ZERO)


def initial_charges(g: Graph) -> dict[int, Fraction]:
    return {v: Fraction(4 * g.degree(v) - 10) for v in range(g.n)}


def _preconditions(g: Graph, a: Analysis) -> None:
    problems = []
    if g.n and g.min_degree() < 2:
        problems.append(f"minimum degree {g.min_degree()} < 2")
    if g.max_degree() > 4:
        problems.append(f"maximum degree {g.max_degree()} > 4")
    if a.paths.cycles:
        problems.append(f"{len(a.paths.cycles)} component(s) made only of 2-vertices")
    if problems:
        raise DischargingError("cannot discharge: " + "; ".join(problems))


def run_discharging(g: Graph, analysis: Analysis | None = None) -> ChargeLedger:
    a = analysis or Analysis(g)
    _preconditions(g, a)
    ledger = ChargeLedger(initial_charges(g))
    out = ledger.transfers
    for t in a.paths.paths:
        walk = t.walk()
        for end in (t.start, t.end):
            for x in t.internals:
                out.append(Transfer(end, x, ONE, "R0", walk))
    for v in range(g.n):
        if g.degree(v) == 4:
            for w in g.adj[v]:
                if g.degree(w) == 3:
                    out.append(Transfer(v, w, ONE, "R1", (v, w)))
    for t in a.paths.paths:
        if t.k != 1:
            continue
        walk = t.walk()
        for v, u in ((t.start, t.end), (t.end, t.start)):
            rule = _r2(a, v, u)
            if rule is not None:
                out.append(Transfer(v, u, rule[1], rule[0], walk))
    final = dict(ledger.initial)
    for tr in out:
        final[tr.giver] -= tr.amount
        final[tr.receiver] += tr.amount
    ledger.final = final
    return ledger


def _r2(a: Analysis, v: int, u: int) -> tuple[str, Fraction] | None:
    dv = a.g.degree(v)
    cu = a.cls(u)
    if dv == 3 and a.signature(v) in ((1, 1, 0), (1, 0, 0)) and cu.flavor == "small":
        return "R2i", THIRD
    if dv != 4:
        return None
    if cu.flavor == "medium":
        return "R2ii", ONE
    if cu.flavor == "large":
        return "R2iii", HALF
    if cu.flavor == "huge":
        return "R2iv", THIRD
    if cu.special:
        return "R2v", THIRD
    return None


# --- certificates ---------------------------------------------------------


@dataclass(frozen=True)
class VertexCertificate:
    vertex: int
    mu: Fraction
    mu_star: Fraction
    case: str
    bound: Fraction | None  # None when the vertex is outside the case analysis
    outside: str | None = None  # the configuration whose absence the analysis assumes

    @property
    def ok(self) -> bool:
        return self.bound is not None and self.mu_star >= self.bound


@dataclass
class Certificate:
    vertices: list[VertexCertificate]
    conserved: bool

    @property
    def nonnegative(self) -> bool:
        return all(c.mu_star >= 0 for c in self.vertices)

    @property
    def outside(self) -> list[VertexCertificate]:
        return [c for c in self.vertices if c.outside]

    @property
    def violations(self) -> list[VertexCertificate]:
        """Vertices inside the case analysis whose charge misses the case bound."""
        return [c for c in self.vertices if c.bound is not None and c.mu_star < c.bound]


def _classify_case(a: Analysis, u: int) -> tuple[str, Fraction | None, str | None]:
    g = a.g
    d = g.degree(u)
    if d <= 1:
        return "degree<=1", None, "L8"
    if d == 2:
        return "C1", ZERO, None
    if d > 4:
        return f"degree{d}", None, "degree>4"
    incs = a.incidences(u)
    ks = [inc.k for inc in incs]
    if any(k >= 3 for k in ks):
        return "long-path", None, "L9"
    cls = a.cls(u)
    if d == 3:
        if 2 in ks:
            return "C2-2path", None, "L10"
        sig = cls.signature
        if sig == (1, 1, 1):
            if cls.flavor == "small":
                # the count for a small vertex relies on its far ends being well formed too
                far_k = max(max(a.signature(inc.far)) for inc in incs)
                if far_k >= 3:
                    return "C2-111-small", None, "L9"
                if far_k == 2:
                    return "C2-111-small", None, "L10"
                if any(a.flavor(inc.far) is not None for inc in incs):
                    return "C2-111-small", None, "L11"
            return f"C2-111-{cls.flavor}", ZERO, None
        if sig == (1, 1, 0):
            ones = [inc for inc in incs if inc.k == 1]
            t = next(inc.far for inc in incs if inc.k == 0)
            if not any(a.flavor(inc.far) == "small" for inc in ones):
                return "C2-110", ZERO, None
            if g.degree(t) >= 4:
                return "C2-110-t4", THIRD, None
            if any(g.degree(inc.far) >= 4 for inc in ones):
                return "C2-110-special", ZERO, None
            return "C2-110-t3", None, "L12"
        if sig == (1, 0, 0):
            return "C2-100", Fraction(2, 3), None
        return "C2-000", Fraction(2), None
    # degree 4
    zeros = [inc for inc in incs if inc.k == 0]
    arms = [inc for inc in incs if inc.k >= 1]
    far = [inc.second if inc.k >= 2 else inc.far for inc in arms]
    light = [a.cls(x).light for x in far]
    if not zeros:
        if sum(light) >= 2:
            for i, j in combinations(range(4), 2):
                if light[i] and light[j] and any(
                    g.degree(far[l]) <= 3 for l in range(4) if l not in (i, j)
                ):
                    return "C3-1111-2light", None, "L13"
            return "C3-1111-2light", ZERO, None
        return "C3-1111", ZERO, None
    if len(zeros) == 1:
        t = zeros[0].far
        if g.degree(t) >= 4:
            return "C3-1110-t4", ZERO, None
        if sum(light) >= 2:
            for i, j in combinations(range(3), 2):
                if light[i] and light[j]:
                    c3 = a.cls(far[3 - i - j])
                    if c3.degree == 2 or c3.special or c3.flavor is not None:
                        return "C3-1110-t3-2light", None, "L14"
            return "C3-1110-t3-2light", ZERO, None
        return "C3-1110-t3", THIRD, None
    return "C3-00", ZERO, None


def certify_nonnegative(
    g: Graph, ledger: ChargeLedger, analysis: Analysis | None = None
) -> Certificate:
    a = analysis or Analysis(g)
    certs = []
    for u in range(g.n):
        case, bound, outside = _classify_case(a, u)
        certs.append(
            VertexCertificate(u, ledger.initial[u], ledger.final[u], case, bound, outside)
        )
    return Certificate(certs, ledger.conserved)


def check_equation_1(g: Graph) -> tuple[Fraction, bool]:
    """Total initial charge ``8|E| - 10|V|`` and whether it is negative whenever mad < 5/2."""
    total = Fraction(8 * g.m - 10 * g.n)
    if g.n == 0:
        return total, True
    consistent = mad_exact(g) >= Fraction(5, 2) or total < 0
    return total, consistent


def render(ledger: ChargeLedger, cert: Certificate) -> str:
    lines = [f"{t.giver} -> {t.receiver} : {t.amount} : {t.rule}" for t in ledger.transfers]
    for c in cert.vertices:
        tag = c.case if not c.outside else f"{c.case} (outside: {c.outside})"
        lines.append(f"{c.vertex} : {c.mu} : {c.mu_star} : {tag}")
    lines.append(f"RESULT: CONSERVED={cert.conserved} NONNEG={cert.nonnegative}")
    return "\n".join(lines) + "\n"
