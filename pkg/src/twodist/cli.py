"""Command-line entry point: ``twodist <subcommand> ...``.

Every report starts with ``#`` header lines holding the full configuration
and ends with a ``RESULT:`` line. Exit status is 0 for a verified positive
outcome, 1 for a verified negative one and 2 for any error.
"""
from __future__ import annotations

import argparse
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import generators as gen
from .coloring import (
    BudgetExceeded,
    check_choosable,
    format_coloring,
    format_lists,
    list_color,
    parse_lists,
    random_lists,
    two_distance_chromatic,
    verify_coloring,
)
from .discharging import DischargingError, certify_nonnegative, check_equation_1, render, run_discharging
from .gadgets import GADGET_IDS, show, verify_gadget
from .graph import Graph, dump_graph, girth, load_graph, mad_exact, square
from .procedures import cross_check_procedure
from .reducibility import CONFIG_IDS, Analysis, HypothesisError, color_constructive, iter_matches

OK, NEGATIVE, ERROR = 0, 1, 2


class UsageError(ValueError):
    pass


# name -> (constructor, parameter names); random generators also take the seed
GENERATORS = {
    "cycle": (gen.cycle, ("n",)),
    "complete": (gen.complete, ("n",)),
    "petersen": (gen.petersen, ()),
    "hoffman_singleton": (gen.hoffman_singleton, ()),
    "fig4_girth4": (gen.fig4_girth4, ("delta",)),
    "fig4_girth5": (gen.fig4_girth5, ()),
    "wegner_g3": (gen.wegner_g3, ("delta",)),
    "wegner_g4": (gen.wegner_g4, ("delta",)),
    "random_sparse": (gen.random_sparse, ("n", "girth")),
    "random_tight": (gen.random_tight, ("s",)),
}
_SEEDED = {"random_sparse", "random_tight"}


def build_graph(name: str, params: list[str], seed: int) -> Graph:
    if name not in GENERATORS:
        raise UsageError(f"unknown generator {name!r}; choose from {', '.join(GENERATORS)}")
    fn, names = GENERATORS[name]
    if len(params) > len(names):
        raise UsageError(f"{name} takes at most {len(names)} parameter(s): {' '.join(names) or 'none'}")
    try:
        args = [int(p) for p in params]
    except ValueError:
        raise UsageError(f"generator parameters must be integers, got {params}") from None
    if name in _SEEDED:
        return fn(*args, seed=seed)
    if len(args) < len(names):
        raise UsageError(f"{name} needs parameter(s): {' '.join(names)}")
    return fn(*args)


def _parse_gen_spec(spec: str) -> tuple[str, list[str]]:
    name, *params = spec.split(":")
    return name, params


def _input_graph(args) -> Graph:
    if args.gen:
        name, params = _parse_gen_spec(args.gen)
        return build_graph(name, params, args.seed)
    if not args.graph:
        raise UsageError("an input graph is required: give a path ('-' for stdin) or --gen NAME[:P1[:P2]]")
    if args.graph == "-":
        return load_graph(sys.stdin.read())
    with open(args.graph) as fh:
        return load_graph(fh.read())


def _header(args, extra: str = "") -> list[str]:
    skip = {"func", "out"}
    items = [f"{k}={v}" for k, v in sorted(vars(args).items()) if k not in skip and v not in (None, False)]
    lines = [f"# twodist {args.command}", "# config " + " ".join(items), f"# seed {args.seed}"]
    if extra:
        lines.append(f"# {extra}")
    return lines


def _fmt_girth(g: Graph) -> str:
    gg = girth(g)
    return "inf" if gg == float("inf") else str(int(gg))


# --- subcommands ------------------------------------------------------------


def cmd_stats(args) -> tuple[int, list[str]]:
    g = _input_graph(args)
    total, consistent = check_equation_1(g)
    mad = mad_exact(g) if g.n else Fraction(0)
    body = [f"n={g.n} m={g.m} delta={g.max_degree()} girth={_fmt_girth(g)} mad={mad} eq1={total}"]
    if not consistent:
        raise AssertionError("total charge is non-negative although mad < 5/2")
    return OK, body + ["RESULT: OK"]


def cmd_square(args) -> tuple[int, list[str]]:
    g = _input_graph(args)
    # keep the output loadable as an edge list: the trailer is a comment here
    return OK, [dump_graph(square(g)).rstrip("\n"), "# RESULT: OK"]


def cmd_color2(args) -> tuple[int, list[str]]:
    g = _input_graph(args)
    lists = None
    if args.lists:
        with open(args.lists) as fh:
            lists = parse_lists(fh.read(), g.n)
    if args.exact:
        if lists is None:
            k, col = two_distance_chromatic(g)
            _check(g, col)
            return OK, [f"chi2={k}", format_coloring(col).rstrip("\n"), "RESULT: OK"]
        col = list_color(square(g), lists)
        if col is None:
            return NEGATIVE, ["no 2-distance coloring from the given lists", "RESULT: UNSAT"]
        _check(g, col)
        return OK, [format_coloring(col).rstrip("\n"), "RESULT: SAT"]
    if lists is None:
        lists = [list(range(6))] * g.n
    try:
        res = color_constructive(g, lists, girth_9_ok=args.girth_9_ok)
    except HypothesisError as exc:
        raise UsageError(str(exc)) from None
    _check(g, res.coloring)
    return OK, res.trace + [format_coloring(res.coloring).rstrip("\n"), "RESULT: COLORED"]


def _check(g: Graph, col: list[int]) -> None:
    bad = verify_coloring(g, col, radius=2)
    if bad is not None:
        raise AssertionError(f"produced coloring conflicts on {bad}")


def _profile(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(x) for x in text.split(","))
    except ValueError:
        raise UsageError(f"profile must be comma-separated integers, got {text!r}") from None


def cmd_choosable(args) -> tuple[int, list[str]]:
    g = _input_graph(args)
    if args.profile:
        profile = _profile(args.profile)
    elif args.k:
        profile = (args.k,) * g.n
    else:
        raise UsageError("give --k or --profile")
    constraints = square(g) if args.radius == 2 else g
    try:
        rep = check_choosable(constraints, profile, mode=args.mode, trials=args.trials, seed=args.seed)
    except BudgetExceeded as exc:
        raise UsageError(str(exc)) from None
    body = [f"mode {rep.mode}", f"checked {rep.checked}"]
    if rep.bound is not None:
        body.append(f"bound {rep.bound}")
    if rep.counterexample is not None:
        body += ["counterexample", format_lists(rep.counterexample).rstrip("\n")]
    body.append(f"RESULT: {rep.verdict}")
    return (OK if rep.choosable else NEGATIVE), body


def _gadget_ids(gid: str) -> list[str]:
    if gid == "all":
        return list(GADGET_IDS)
    if gid not in GADGET_IDS:
        raise UsageError(f"unknown gadget {gid!r}; expected one of {', '.join(GADGET_IDS)} or all")
    return [gid]


def cmd_gadget(args) -> tuple[int, list[str]]:
    ids = _gadget_ids(args.id)
    body: list[str] = []
    status = OK
    if args.action == "show":
        for gid in ids:
            body.append(show(gid).rstrip("\n"))
        return OK, body + ["# RESULT: OK"]
    if args.action == "verify":
        profile = _profile(args.profile) if args.profile else None
        if profile is not None and len(ids) != 1:
            raise UsageError("--profile needs a single gadget id")
        verdicts = []
        for gid in ids:
            try:
                rep = verify_gadget(gid, mode=args.mode, trials=args.trials, seed=args.seed, profile=profile)
            except BudgetExceeded as exc:
                raise UsageError(f"gadget {gid}: {exc}") from None
            lines = rep.render().rstrip("\n").split("\n")
            body += lines[:-1] + [f"gadget {gid}: {rep.result.verdict}"]
            verdicts.append(rep.result.verdict)
            if not rep.result.choosable:
                status = NEGATIVE
        overall = verdicts[0] if len(set(verdicts)) == 1 else ("NOT_CHOOSABLE" if status else "NO_FAILURE_FOUND")
        return status, body + [f"RESULT: {overall}"]
    # fuzz
    for gid in ids:
        rep = cross_check_procedure(gid, trials=args.trials, seed=args.seed)
        body.append(rep.render().rstrip("\n"))
        if not rep.ok:
            status = NEGATIVE
    return status, body + [f"RESULT: {'PASS' if status == OK else 'FAIL'}"]


def cmd_detect(args) -> tuple[int, list[str]]:
    g = _input_graph(args)
    a = Analysis(g)
    body = []
    found = None
    for config_id in CONFIG_IDS:
        m = next(iter_matches(g, config_id, a), None)
        if m is None:
            body.append(f"{config_id}: none")
            continue
        body.append(f"{config_id}: {m.describe()}")
        for step in m.steps:
            body.append(f"  {step.describe()}")
        found = m
        break
    if found is None:
        return NEGATIVE, body + ["RESULT: NONE"]
    return OK, body + [f"RESULT: FOUND {found.config_id}"]


def cmd_discharge(args) -> tuple[int, list[str]]:
    g = _input_graph(args)
    try:
        ledger = run_discharging(g)
    except DischargingError as exc:
        raise UsageError(str(exc)) from None
    cert = certify_nonnegative(g, ledger)
    if not cert.conserved:
        raise AssertionError("charge not conserved")
    body = render(ledger, cert).rstrip("\n").split("\n")
    return (OK if cert.nonnegative else NEGATIVE), body


def cmd_gen(args) -> tuple[int, list[str]]:
    g = build_graph(args.name, args.params, args.seed)
    body = [dump_graph(g).rstrip("\n")]
    if args.name == "fig4_girth5":
        body += [f"# check {'ok' if ok else 'FAILED'}: {what}" for what, ok in gen.fig4_girth5_checklist(g)]
    return OK, body + ["# RESULT: OK"]


def corpus_instance(seed: int, n_min: int = 22, n_max: int = 120, target_girth: int = 10) -> dict:
    """Generate one corpus graph and run detection, discharging and both colorings on it."""
    rng = random.Random(seed)
    n = rng.randint(n_min, n_max)
    g = gen.random_sparse(n, target_girth, seed)
    m = next((m for config_id in CONFIG_IDS for m in iter_matches(g, config_id)), None)
    ledger = run_discharging(g)
    conserved = ledger.conserved and ledger.total() == 8 * g.m - 10 * g.n
    colored = True
    for lists in ([list(range(6))] * g.n, random_lists(rng, g.n)):
        res = color_constructive(g, lists, girth_9_ok=target_girth == 9)
        colored &= verify_coloring(g, res.coloring, radius=2) is None
        colored &= all(c in lst for c, lst in zip(res.coloring, lists))
    return {
        "seed": seed,
        "n": g.n,
        "m": g.m,
        "config_id": m.config_id if m else "none",
        "conserved": conserved,
        "colored": colored,
    }


def cmd_corpus(args) -> tuple[int, list[str]]:
    if args.count < 1:
        raise UsageError("--count must be >= 1")
    seeds = [args.seed + i for i in range(args.count)]
    kw = dict(n_min=args.n_min, n_max=args.n_max, target_girth=args.girth)
    if args.jobs > 1:
        with ProcessPoolExecutor(args.jobs) as pool:
            rows = list(pool.map(_corpus_star, [(s, kw) for s in seeds]))
    else:
        rows = [corpus_instance(s, **kw) for s in seeds]
    body = [
        f"seed={r['seed']} n={r['n']} m={r['m']} detect={r['config_id']} "
        f"conserved={r['conserved']} colored={r['colored']}"
        for r in rows
    ]
    det = sum(r["config_id"] != "none" for r in rows)
    con = sum(r["conserved"] for r in rows)
    col = sum(r["colored"] for r in rows)
    k = len(rows)
    body.append(f"detect={det}/{k} conserved={con}/{k} colored={col}/{k}")
    good = det == con == col == k
    return (OK if good else NEGATIVE), body + [f"RESULT: {'PASS' if good else 'FAIL'}"]


def _corpus_star(item):
    seed, kw = item
    return corpus_instance(seed, **kw)


# --- parser -----------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="write the report here instead of stdout")

    graph_in = argparse.ArgumentParser(add_help=False)
    graph_in.add_argument("graph", nargs="?", help="edge-list file, '-' for stdin")
    graph_in.add_argument("--gen", help="generator spec NAME[:P1[:P2]] instead of a file")

    search = argparse.ArgumentParser(add_help=False)
    search.add_argument("--mode", choices=("exhaustive", "randomized"), default="exhaustive")
    search.add_argument("--trials", type=int, default=10_000)

    p = argparse.ArgumentParser(prog="twodist", description="2-distance coloring toolkit")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("stats", parents=[common, graph_in], help="size, degree, girth, mad, charge sum")
    s.set_defaults(func=cmd_stats)
    s = sub.add_parser("square", parents=[common, graph_in], help="print the square graph")
    s.set_defaults(func=cmd_square)

    s = sub.add_parser("color2", parents=[common, graph_in], help="2-distance (list) coloring")
    s.add_argument("--exact", action="store_true", help="exact solver instead of the constructive colorer")
    s.add_argument("--lists", help="list assignment file, lines 'v: c1,c2,...'")
    s.add_argument("--girth-9-ok", action="store_true", help="accept girth 9 instead of 10")
    s.set_defaults(func=cmd_color2)

    s = sub.add_parser("choosable", parents=[common, graph_in, search], help="list-choosability check")
    s.add_argument("--k", type=int, help="uniform list size")
    s.add_argument("--profile", help="comma-separated list sizes per vertex")
    s.add_argument("--radius", type=int, choices=(1, 2), default=2)
    s.set_defaults(func=cmd_choosable)

    s = sub.add_parser("gadget", parents=[common, search], help="inspect and check the ten gadgets")
    s.add_argument("action", choices=("verify", "show", "fuzz"))
    s.add_argument("id", help="gadget id a..j or 'all'")
    s.add_argument("--profile", help="override the size profile (verify only)")
    s.set_defaults(func=cmd_gadget)

    s = sub.add_parser("detect", parents=[common, graph_in], help="find a reducible configuration")
    s.set_defaults(func=cmd_detect)
    s = sub.add_parser("discharge", parents=[common, graph_in], help="charge ledger and certificate")
    s.set_defaults(func=cmd_discharge)

    s = sub.add_parser("gen", parents=[common], help="emit a named graph as an edge list")
    s.add_argument("name", choices=sorted(GENERATORS))
    s.add_argument("params", nargs="*")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("corpus", parents=[common], help="end-to-end run over random sparse graphs")
    s.add_argument("--count", type=int, default=100)
    s.add_argument("--n-min", type=int, default=22)
    s.add_argument("--n-max", type=int, default=120)
    s.add_argument("--girth", type=int, choices=(9, 10), default=10)
    s.add_argument("--jobs", type=int, default=1)
    s.set_defaults(func=cmd_corpus)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)  # exits with status 2 on usage errors
    try:
        status, body = args.func(args)
    except (UsageError, ValueError, KeyError, OSError, gen.GenerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return ERROR
    except AssertionError as exc:
        print(f"internal check failed: {exc}", file=sys.stderr)
        return ERROR
    text = "\n".join(_header(args) + body) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
