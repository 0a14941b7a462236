"""Command-line front end: compute, verify, simulate, bestresponse.

Exit codes: 0 pass, 1 fail, 2 usage, 3 budget exceeded / inconclusive.
"""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
import time

from .cache import CacheRecord, ResultCache
from .corpora import enumeration_corpus, family_corpus, graph6_corpus
from .engine import (
    DEFAULT_MAX_STATES,
    INF,
    BudgetExceeded,
    Variant,
    capture_time,
    damage_result,
    not_adjacent_to_cop,
    solve_values,
)
from .families import build_family
from .graph import GraphError, corner_dismantle, radius_ecc_centers
from .harness import ALL_CHECKS, GRAPH_CLAIMS, Summary, default_corpus, run
from .strategies import (
    COP_STRATEGIES,
    ROBBER_STRATEGIES,
    CopSolverOptimal,
    RobberSolverOptimal,
    StrategyError,
    best_response,
    simulate,
)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_BUDGET = 0, 1, 2, 3
BEST_RESPONSE_STATES = 10**8
METRICS = ("dmg", "dmgprime", "capt", "rad", "copwin")

log = logging.getLogger("damage_lab")


class UsageError(Exception):
    pass


def _graph(spec: str):
    try:
        return build_family(spec)
    except (GraphError, OSError) as exc:
        raise UsageError(f"cannot build graph {spec!r}: {exc}") from None


def _emit(args, payload: dict, text: str) -> None:
    print(json.dumps(payload, sort_keys=True) if args.json else text)


# -- compute -----------------------------------------------------------------

def _solve_record(spec: str, g, max_states: int) -> CacheRecord:
    t0 = time.perf_counter()
    table = solve_values(g, max_states, keep_layers=False)
    res = damage_result(table, Variant.NORMAL)
    pres = damage_result(table, Variant.COP_PASSES_FIRST)
    capt = capture_time(g)
    return CacheRecord(
        graph_key=spec, n=g.n, dmg=res.value, dmg_prime=pres.value,
        capt="inf" if capt.value == INF else int(capt.value),
        rad=radius_ecc_centers(g)[0],
        dmg_cop_starts=res.best_cop_starts, dmg_prime_cop_starts=pres.best_cop_starts,
        capt_cop_starts=capt.best_cop_starts,
        elapsed_ms=(time.perf_counter() - t0) * 1000,
    )


def cmd_compute(args) -> int:
    g = _graph(args.graph)
    if args.metric in ("rad", "copwin"):
        if args.metric == "rad":
            rad, _, centers = radius_ecc_centers(g)
            _emit(args, {"metric": "rad", "graph": args.graph, "value": rad, "centers": centers},
                  f"rad = {rad}  centers {centers}")
        else:
            ok, order = corner_dismantle(g)
            _emit(args, {"metric": "copwin", "graph": args.graph, "value": ok, "order": order},
                  f"copwin = {ok}  elimination order {order}")
        return EXIT_PASS
    g.require_connected()
    cache = None if args.no_cache else ResultCache.from_env(args.cache)
    rec = cache.lookup(args.graph) if cache else None
    cached = rec is not None
    if cached and random.random() < args.recheck:
        fresh = _solve_record(args.graph, g, args.max_states)
        if (fresh.dmg, fresh.dmg_prime, fresh.capt) != (rec.dmg, rec.dmg_prime, rec.capt):
            log.error("cache record for %s disagrees with a fresh solve", args.graph)
            rec, cached = fresh, False
    if rec is None:
        rec = _solve_record(args.graph, g, args.max_states)
        if cache:
            cache.append(rec)
    value, starts = {
        "dmg": (rec.dmg, rec.dmg_cop_starts),
        "dmgprime": (rec.dmg_prime, rec.dmg_prime_cop_starts),
        "capt": (rec.capt, rec.capt_cop_starts),
    }[args.metric]
    _emit(args, {"metric": args.metric, "graph": args.graph, "value": value,
                 "cop_starts": starts, "cached": cached, "elapsed_ms": rec.elapsed_ms},
          f"{args.metric} = {value}  optimal cop starts {starts}" + ("  (cached)" if cached else ""))
    return EXIT_PASS


# -- verify ------------------------------------------------------------------

def cmd_verify(args) -> int:
    if args.check != "all" and args.check not in ALL_CHECKS:
        raise UsageError(f"unknown check id {args.check!r}; known: {', '.join(ALL_CHECKS)}")
    if args.corpus:
        corpus = graph6_corpus(args.corpus)
    elif args.family:
        corpus = family_corpus(args.family)
    elif args.enum is not None:
        corpus = enumeration_corpus(args.enum)
    else:
        corpus = default_corpus(5)
    options = {"max_m": args.max}
    summary = Summary()
    out = open(args.out, "w", encoding="utf-8") if args.out else None
    try:
        for report in run(args.check, corpus, args.threads, args.max_states, **options):
            summary.add(report)
            line = report.to_json()
            if out:
                out.write(line + "\n")
            if args.json or (report.verdict == "fail" and not args.quiet):
                print(line)
    finally:
        if out:
            out.close()
    if not args.json:
        print(summary.table())
    return summary.exit_code()


# -- strategies --------------------------------------------------------------

def _cop(name: str, g, variant: Variant, args):
    if name == "solver-optimal":
        return CopSolverOptimal(solve_values(g, args.max_states), variant)
    if name not in COP_STRATEGIES:
        raise UsageError(f"unknown cop strategy {name!r}; known: solver-optimal, "
                         + ", ".join(COP_STRATEGIES))
    return COP_STRATEGIES[name](g, initial_pass=args.initial_pass)


def _robber(name: str, g, variant: Variant, args):
    if name == "solver-optimal":
        return RobberSolverOptimal(solve_values(g, args.max_states), variant)
    if name not in ROBBER_STRATEGIES:
        raise UsageError(f"unknown robber strategy {name!r}; known: solver-optimal, "
                         + ", ".join(ROBBER_STRATEGIES))
    return ROBBER_STRATEGIES[name](g)


def _variant(args) -> Variant:
    return Variant.COP_PASSES_FIRST if args.prime else Variant.NORMAL


def cmd_simulate(args) -> int:
    g = _graph(args.graph)
    variant = _variant(args)
    cop = _cop(args.cop, g, variant, args)
    robber = _robber(args.robber, g, variant, args)
    try:
        tr = simulate(g, cop, robber, args.rounds, variant, args.cop_start, args.robber_start)
    except StrategyError as exc:
        raise UsageError(str(exc)) from None
    if args.transcript:
        tr.save(args.transcript)
    if args.json:
        print(json.dumps({"graph": args.graph, "cop": cop.name, "robber": robber.name,
                          "cop_start": tr.cop_start, "robber_start": tr.robber_start,
                          "damage": tr.damage, "damaged": tr.damaged_vertices,
                          "reason": tr.reason}, sort_keys=True))
    else:
        print(f"start: cop {tr.cop_start}, robber {tr.robber_start}")
        for e in tr.entries:
            dmg = f"  damages {e.damaged_vertex}" if e.damaged_vertex is not None else ""
            print(f"round {e.round:3d}  {e.actor:6} {e.src:2d} -> {e.dst:2d}{dmg}")
        print(f"damage {tr.damage}: {tr.damaged_vertices}  ({tr.reason})")
    return EXIT_BUDGET if tr.inconclusive else EXIT_PASS


def cmd_bestresponse(args) -> int:
    g = _graph(args.graph)
    side, sep, name = args.fix.partition(":")
    if not sep or side not in ("cop", "robber"):
        raise UsageError("--fix expects cop:<name> or robber:<name>")
    variant = _variant(args)
    fixed = _cop(name, g, variant, args) if side == "cop" else _robber(name, g, variant, args)
    starts = not_adjacent_to_cop(g) if args.not_adjacent else None
    try:
        cert = best_response(g, fixed, variant=variant, robber_starts=starts,
                             cop_start=args.cop_start, max_states=args.max_states, cap=args.cap)
    except StrategyError as exc:
        raise UsageError(str(exc)) from None
    cert.graph = args.graph
    bound = ("dmg" if variant is Variant.NORMAL else "dmg'") + \
        (" <= " if side == "cop" else " >= ") + str(cert.value)
    _emit(args, {"graph": args.graph, "fixed": args.fix, "value": cert.value,
                 "direction": cert.direction, "bound": bound, "states": cert.states,
                 "free_start": cert.free_start, "cap": args.cap, "seconds": cert.seconds},
          f"{cert.describe()}\n{bound}" + (f"  (payoff clamped at {args.cap})" if args.cap else ""))
    return EXIT_PASS


# -- parser ------------------------------------------------------------------

def _int_budget(text: str) -> int:
    return int(float(text))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--threads", type=int, default=1, help="worker processes for sweeps")
    common.add_argument("--max-states", type=_int_budget,
                        help="state budget (exit 3 when exceeded)")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="damage-lab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compute", parents=[common], help="compute a graph invariant")
    c.add_argument("metric", choices=METRICS)
    c.add_argument("graph", help="family descriptor, e.g. cycle:7 or product:cycle:4xcycle:4")
    c.add_argument("--cache", help="JSONL cache path (default: $DAMAGE_LAB_CACHE)")
    c.add_argument("--no-cache", action="store_true")
    c.add_argument("--recheck", type=float, default=0.05,
                   help="fraction of cache hits recomputed and compared")
    c.set_defaults(func=cmd_compute)

    v = sub.add_parser("verify", parents=[common], help="run harness checks")
    v.add_argument("check", help="check id or 'all'; graph claims: " + ", ".join(GRAPH_CLAIMS))
    v.add_argument("--enum", type=int, help="labelled connected graphs up to this order")
    v.add_argument("--corpus", help="graph6 corpus file")
    v.add_argument("--family", action="append", help="family descriptor (repeatable)")
    v.add_argument("--max", type=int, help="size limit for family checks (cliques, cycles)")
    v.add_argument("--out", help="write JSONL reports here")
    v.add_argument("--quiet", action="store_true", help="do not echo failing reports")
    v.set_defaults(func=cmd_verify)

    s = sub.add_parser("simulate", parents=[common], help="play two strategies")
    s.add_argument("graph")
    s.add_argument("--cop", required=True)
    s.add_argument("--robber", required=True)
    s.add_argument("--rounds", type=int, default=1000)
    s.add_argument("--cop-start", type=int)
    s.add_argument("--robber-start", type=int)
    s.add_argument("--prime", action="store_true", help="cop's first action is a forced pass")
    s.add_argument("--initial-pass", action="store_true", help="cycle-opposition: pass first")
    s.add_argument("--transcript", help="write the move list as JSONL")
    s.set_defaults(func=cmd_simulate)

    b = sub.add_parser("bestresponse", parents=[common], help="exact best response to a strategy")
    b.add_argument("graph")
    b.add_argument("--fix", required=True, help="cop:<name> or robber:<name>")
    b.add_argument("--cap", type=int, help="clamp the payoff (decides value >= cap exactly)")
    b.add_argument("--cop-start", type=int)
    b.add_argument("--not-adjacent", action="store_true",
                   help="robber may only start outside the cop's closed neighbourhood")
    b.add_argument("--prime", action="store_true")
    b.add_argument("--initial-pass", action="store_true")
    b.set_defaults(func=cmd_bestresponse)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_PASS
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    if args.max_states is None:
        args.max_states = BEST_RESPONSE_STATES if args.command == "bestresponse" else DEFAULT_MAX_STATES
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except GraphError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
