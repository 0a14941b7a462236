"""Machine-checkable claims about damage numbers, swept over corpora.

Every check yields ``CheckReport`` records.  Per-graph claims run over a
``Corpus``; product and family claims carry their own instance lists.  A
failing report always embeds a replayable counterexample: the graph6
string of the instance plus the cop and robber placements that witness
the computed value.
"""

from __future__ import annotations

import json
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable, Iterator

from .corpora import Corpus, enumeration_corpus, family_corpus, unrooted_trees
from .engine import (
    INF,
    BudgetExceeded,
    DEFAULT_MAX_STATES,
    Variant,
    capture_time,
    damage_given_start,
    damage_result,
    damage_number_restricted,
    not_adjacent_to_cop,
    solve_values,
)
from .families import build_family, complete, cycle, star
from .graph import (
    Graph,
    all_pairs_distance,
    cartesian_product,
    corner_dismantle,
    dominates,
    has_c_dominated_vertex,
    has_universal_vertex,
    is_tree,
    o_dominates,
    radius_ecc_centers,
)
from .graph6 import encode_graph6

SCHEMA = "damage-lab/check-report/1"

PASS, FAIL, SKIPPED, INCONCLUSIVE = "pass", "fail", "skipped", "inconclusive"


@dataclass
class CheckReport:
    claim: str
    instance: str
    expected: str
    computed: dict
    verdict: str
    reason: str = ""
    elapsed: float = 0.0
    counterexample: dict | None = None
    mode: str = "exact"

    def to_json(self) -> str:
        d = asdict(self)
        d["schema"] = SCHEMA
        return json.dumps(d, sort_keys=True)


def counterexample(g: Graph, cop: int | None = None, robber: int | None = None) -> dict:
    return {"graph6": encode_graph6(g), "cop": cop, "robber": robber}


# -- characterisation predicates --------------------------------------------

def dmg1_predicate(g: Graph) -> tuple[bool, int | None]:
    """rad = 2 and some centre c dominates every w outside N[c] from within N[c].

    Returns (holds, lowest witness centre).
    """
    rad, _, centers = radius_ecc_centers(g)
    if rad != 2:
        return False, None
    for c in centers:
        near = g.closed_neighbors(c)
        outside = [w for w in range(g.n) if not g.closed(c) >> w & 1]
        if all(any(dominates(g, s, w) for s in near) for w in outside):
            return True, c
    return False, None


def _dmg2_vertex(g: Graph, z: int, y: int, dist) -> bool:
    """Conditions (1)-(3) for the pair (z, y), with s_y chosen for this y."""
    if dist[z][y] not in (2, 3):
        return False
    near_z = g.closed_neighbors(z)
    if any(dominates(g, s, y) for s in near_z):
        return False
    ny = g.adj[y]
    for s_y in near_z:
        ok = True
        for x in g.neighbors(y):
            if g.closed(s_y) >> x & 1:
                continue
            nx_minus_y = g.adj[x] & ~(1 << y)
            ny_minus_x = ny & ~(1 << x)
            if not any(
                nx_minus_y & ~g.closed(s_x) == 0
                and any(ny_minus_x & ~g.closed(v) == 0 for v in g.closed_neighbors(s_x))
                for s_x in g.closed_neighbors(s_y)
            ):
                ok = False
                break
        if ok:
            return True
    return False


def dmg2_hypothesis(g: Graph) -> bool:
    rad = radius_ecc_centers(g)[0]
    return rad in (2, 3) and not dmg1_predicate(g)[0]


def dmg2_predicate(g: Graph) -> tuple[bool | None, int | None]:
    """Damage-two condition; (None, None) when its hypotheses fail.

    Holds iff some z with eccentricity <= 3 admits a y satisfying (1)-(3),
    and every other w at distance 2 or 3 from z either satisfies (1)-(3)
    itself (with its own s_w) or is dominated by a vertex of N[z].
    Condition (3) allows v anywhere in N[s_x], including s_x.
    """
    if not dmg2_hypothesis(g):
        return None, None
    dist = all_pairs_distance(g)
    _, ecc, _ = radius_ecc_centers(g)
    for z in range(g.n):
        if ecc[z] > 3:
            continue
        far = [w for w in range(g.n) if dist[z][w] in (2, 3)]
        good = {w for w in far if _dmg2_vertex(g, z, w, dist)}
        if not good:
            continue
        near_z = g.closed_neighbors(z)
        if all(w in good or any(dominates(g, s, w) for s in near_z) for w in far):
            return True, z
    return False, None


# -- fixtures ----------------------------------------------------------------

NONCENTRAL_LABELS = ("c", "z", "v3", "v4", "v5", "v6", "v7", "v8", "u")
_NONCENTRAL_EDGES = (
    ("c", "z"), ("c", "v3"), ("c", "v6"),
    ("z", "v4"), ("z", "v5"), ("z", "v7"),
    ("v3", "v4"), ("v3", "u"),
    ("v4", "v5"), ("v4", "v7"),
    ("v5", "v8"), ("v6", "v8"), ("v7", "v8"),
)
NONCENTRAL_DEGREES = (3, 4, 3, 4, 3, 2, 3, 3, 1)


def noncentral_optimum_graph() -> Graph:
    """Radius-2 graph with damage number 2 whose only optimal cop start is not a centre.

    ``NONCENTRAL_LABELS[i]`` names vertex i; c is the unique centre and z
    the optimal cop start.
    """
    ix = {name: i for i, name in enumerate(NONCENTRAL_LABELS)}
    g = Graph.from_edges(len(ix), [(ix[a], ix[b]) for a, b in _NONCENTRAL_EDGES],
                         name="noncentral-start")
    assert tuple(g.degree(v) for v in range(g.n)) == NONCENTRAL_DEGREES
    return g


# -- per-graph profile -------------------------------------------------------

@dataclass
class Profile:
    key: str
    graph6: str
    n: int
    rad: int
    dmg: int
    dmg_prime: int
    cop: int
    robber: int
    cop_prime: int
    robber_prime: int
    universal: bool
    capt: float
    copwin: bool
    tree: bool
    dmg1: bool
    dmg1_center: int | None
    dmg2: bool | None
    dmg2_z: int | None
    seconds: float = 0.0


def profile(key: str, g: Graph, max_states: int = DEFAULT_MAX_STATES) -> Profile:
    t0 = time.perf_counter()
    table = solve_values(g, max_states)
    res = damage_result(table, Variant.NORMAL)
    pres = damage_result(table, Variant.COP_PASSES_FIRST)
    c, cp = res.best_cop_starts[0], pres.best_cop_starts[0]
    d1, center = dmg1_predicate(g)
    d2, z = dmg2_predicate(g)
    return Profile(
        key=key, graph6=encode_graph6(g), n=g.n, rad=radius_ecc_centers(g)[0],
        dmg=res.value, dmg_prime=pres.value,
        cop=c, robber=res.witness_robber_start[c],
        cop_prime=cp, robber_prime=pres.witness_robber_start[cp],
        universal=has_universal_vertex(g), capt=capture_time(g).value,
        copwin=corner_dismantle(g)[0], tree=is_tree(g),
        dmg1=d1, dmg1_center=center, dmg2=d2, dmg2_z=z,
        seconds=time.perf_counter() - t0,
    )


def _cx(p: Profile, prime: bool = False) -> dict:
    if prime:
        return {"graph6": p.graph6, "cop": p.cop_prime, "robber": p.robber_prime}
    return {"graph6": p.graph6, "cop": p.cop, "robber": p.robber}


def _capt(p: Profile):
    return "inf" if p.capt == INF else int(p.capt)


# Each per-graph claim maps a profile to (verdict, expected, computed, counterexample-or-None, reason).
GraphClaim = Callable[[Profile], tuple[str, str, dict, dict | None, str]]


def _radius_lower_bound(p):
    ok = p.dmg >= p.rad - 1
    return (PASS if ok else FAIL), "dmg >= rad-1", {"dmg": p.dmg, "rad": p.rad}, _cx(p), ""


def _universal_iff_zero(p):
    ok = (p.dmg == 0) == p.universal
    return (PASS if ok else FAIL), "dmg == 0 <=> universal vertex", \
        {"dmg": p.dmg, "universal": p.universal}, _cx(p), ""


def _prime_range(p):
    ok = p.dmg_prime in (p.dmg, p.dmg + 1)
    return (PASS if ok else FAIL), "dmg' in {dmg, dmg+1}", \
        {"dmg": p.dmg, "dmg_prime": p.dmg_prime}, _cx(p, prime=True), ""


def _capt_bound(p):
    vals = {"dmg": p.dmg, "capt": _capt(p)}
    if p.capt == INF:
        return SKIPPED, "dmg <= capt-1", vals, None, "not copwin"
    if p.n == 1:
        return SKIPPED, "dmg <= capt-1", vals, None, "single vertex: capture at placement"
    ok = p.dmg <= p.capt - 1
    return (PASS if ok else FAIL), "dmg <= capt-1", vals, _cx(p), ""


def _copwin_dismantle(p):
    ok = p.copwin == (p.capt != INF)
    return (PASS if ok else FAIL), "dismantlable <=> capt finite", \
        {"dismantlable": p.copwin, "capt": _capt(p)}, _cx(p), ""


def _dmg1_char(p):
    ok = p.dmg1 == (p.dmg == 1)
    return (PASS if ok else FAIL), "dmg1 predicate <=> dmg == 1", \
        {"dmg": p.dmg, "predicate": p.dmg1, "center": p.dmg1_center}, _cx(p), ""


def _dmg2_char(p):
    vals = {"dmg": p.dmg, "rad": p.rad, "predicate": p.dmg2, "z": p.dmg2_z}
    if p.rad not in (2, 3) or p.dmg == 1:
        return SKIPPED, "dmg2 predicate <=> dmg == 2", vals, None, "outside rad in {2,3}, dmg != 1"
    if p.dmg2 is None:
        # the dmg1 predicate holds although dmg != 1; that mismatch is reported by its own claim
        return SKIPPED, "dmg2 predicate <=> dmg == 2", vals, None, "dmg1 predicate holds"
    ok = p.dmg2 == (p.dmg == 2)
    return (PASS if ok else FAIL), "dmg2 predicate <=> dmg == 2", vals, _cx(p), ""


def _radius_implications(p):
    ok = (p.dmg != 1 or p.rad == 2) and (p.dmg != 2 or p.rad in (2, 3))
    return (PASS if ok else FAIL), "dmg=1 => rad=2; dmg=2 => rad in {2,3}", \
        {"dmg": p.dmg, "rad": p.rad}, _cx(p), ""


def _tree_radius(p):
    vals = {"dmg": p.dmg, "rad": p.rad, "capt": _capt(p)}
    if not p.tree:
        return SKIPPED, "dmg = rad-1 and capt <= rad", vals, None, "not a tree"
    ok = p.dmg == max(p.rad - 1, 0) and p.capt <= p.rad
    return (PASS if ok else FAIL), "dmg = rad-1 and capt <= rad", vals, _cx(p), ""


GRAPH_CLAIMS: dict[str, GraphClaim] = {
    "radius-lower-bound": _radius_lower_bound,
    "universal-iff-zero": _universal_iff_zero,
    "prime-range": _prime_range,
    "capt-bound": _capt_bound,
    "copwin-dismantle": _copwin_dismantle,
    "dmg1-characterization": _dmg1_char,
    "dmg2-characterization": _dmg2_char,
    "radius-implications": _radius_implications,
    "tree-radius": _tree_radius,
}


def _profile_job(args):
    key, g, max_states = args
    try:
        return profile(key, g, max_states), None
    except BudgetExceeded as exc:
        return None, str(exc)


def _graph_reports(key: str, g: Graph, prof: Profile | None, err: str | None,
                   claims: list[str]) -> list[CheckReport]:
    out = []
    for cid in claims:
        if prof is None:
            out.append(CheckReport(cid, key, "", {"n": g.n}, INCONCLUSIVE, reason=err or "budget"))
            continue
        verdict, expected, vals, cx, reason = GRAPH_CLAIMS[cid](prof)
        out.append(CheckReport(cid, key, expected, vals, verdict, reason, prof.seconds,
                               cx if verdict == FAIL else None))
    return out


def sweep(corpus: Iterable[tuple[str, Graph]], claims: list[str] | None = None,
          threads: int = 1, max_states: int = DEFAULT_MAX_STATES) -> Iterator[CheckReport]:
    """Run per-graph claims over a corpus; reports come back in corpus order."""
    claims = list(GRAPH_CLAIMS) if claims is None else claims
    unknown = [c for c in claims if c not in GRAPH_CLAIMS]
    if unknown:
        raise KeyError(f"unknown graph claim(s): {', '.join(unknown)}")
    items = ((key, g, max_states) for key, g in corpus)
    if threads <= 1:
        for key, g, ms in items:
            prof, err = _profile_job((key, g, ms))
            yield from _graph_reports(key, g, prof, err, claims)
        return
    with ProcessPoolExecutor(max_workers=threads) as pool:
        jobs = list(items)
        for (key, g, _), (prof, err) in zip(jobs, pool.map(_profile_job, jobs, chunksize=64)):
            yield from _graph_reports(key, g, prof, err, claims)


# -- named instance checks ---------------------------------------------------

def _exact(claim: str, spec: str, g: Graph, expected: str, test, max_states: int,
           cap: int | None = None, variant: Variant = Variant.NORMAL) -> CheckReport:
    """Solve ``g`` (optionally clamped at ``cap``) and apply ``test`` to the damage value."""
    t0 = time.perf_counter()
    try:
        table = solve_values(g, max_states, keep_layers=False, cap=cap)
    except BudgetExceeded as exc:
        return CheckReport(claim, spec, expected, {"n": g.n}, INCONCLUSIVE, str(exc),
                           time.perf_counter() - t0)
    res = damage_result(table, variant)
    vals = {"dmg" if variant is Variant.NORMAL else "dmg_prime": res.value, "n": g.n}
    mode = "exact"
    if cap is not None and cap <= g.n:
        vals["cap"] = cap
        mode = "exact-capped"
    ok = test(res.value)
    c = res.best_cop_starts[0]
    return CheckReport(claim, spec, expected, vals, PASS if ok else FAIL, "",
                       time.perf_counter() - t0,
                       None if ok else counterexample(g, c, res.witness_robber_start[c]), mode)


def check_cycle_formula(max_m: int = 12, max_states: int = DEFAULT_MAX_STATES):
    for m in range(3, max_m + 1):
        want = (m - 1) // 2
        yield _exact("cycle-formula", f"cycle:{m}", cycle(m), f"dmg = {want}",
                     lambda v, w=want: v == w, max_states)


def check_cycle_prime(max_m: int = 10, max_states: int = DEFAULT_MAX_STATES):
    for m in range(4, max_m + 1):
        g = cycle(m)
        base = (m - 1) // 2
        want = base + 1 if m % 2 == 0 else base
        yield _exact("cycle-prime", f"cycle:{m}", g, f"dmg' = {want}",
                     lambda v, w=want: v == w, max_states, variant=Variant.COP_PASSES_FIRST)
        if m % 2 == 0:
            t0 = time.perf_counter()
            v = damage_number_restricted(g, not_adjacent_to_cop(g), Variant.COP_PASSES_FIRST)
            yield CheckReport("cycle-prime", f"cycle:{m}/robber-not-adjacent", f"dmg' = {base}",
                              {"dmg_prime_restricted": v}, PASS if v == base else FAIL, "",
                              time.perf_counter() - t0,
                              None if v == base else counterexample(g))


def check_converse_counterexamples(max_states: int = DEFAULT_MAX_STATES):
    """Radius 2 does not force damage 2 (C4); radius 3 does not force damage 2 (C7)."""
    for m, rad in ((4, 2), (7, 3)):
        g = cycle(m)
        yield _exact("converse-counterexamples", f"cycle:{m}", g,
                     f"rad = {rad} and dmg != 2",
                     lambda v, g=g, rad=rad: radius_ecc_centers(g)[0] == rad and v != 2, max_states)


def check_noncentral_start(max_states: int = DEFAULT_MAX_STATES):
    g = noncentral_optimum_graph()
    t0 = time.perf_counter()
    table = solve_values(g, max_states)
    rad, ecc, centers = radius_ecc_centers(g)
    z, c = NONCENTRAL_LABELS.index("z"), NONCENTRAL_LABELS.index("c")
    from_z, rz = damage_given_start(g, z, table)
    from_c, rc = damage_given_start(g, c, table)
    res = damage_result(table)
    vals = {"rad": rad, "centers": centers, "from_z": from_z, "from_c": from_c, "dmg": res.value,
            "best_cop_starts": res.best_cop_starts}
    ok = (rad == 2 and centers == [c] and from_z == 2 and from_c >= 3 and res.value == 2
          and c not in res.best_cop_starts)
    yield CheckReport("noncentral-start", g.name,
                      "rad 2, unique centre c, start z -> 2, start c -> >= 3", vals,
                      PASS if ok else FAIL, "", time.perf_counter() - t0,
                      None if ok else counterexample(g, c, rc))


# -- products ----------------------------------------------------------------

def _factor_values(g: Graph, max_states: int) -> tuple[int, int]:
    t = solve_values(g, max_states)
    return damage_result(t).value, damage_result(t, Variant.COP_PASSES_FIRST).value


def _pspec(a: str, b: str) -> str:
    return f"product:{a}x{b}"


def check_product_cliques(max_m: int = 4, max_states: int = DEFAULT_MAX_STATES):
    for m in range(3, max_m + 1):
        for n in range(m, max_m + 1):
            g = cartesian_product(complete(m), complete(n))
            yield _exact("prod:cliques", _pspec(f"complete:{m}", f"complete:{n}"), g,
                         f"dmg = {m}", lambda v, m=m: v == m, max_states)


UNIVERSAL_FACTORS = ("star:2", "star:3", "complete:2", "complete:3", "complete:4",
                     "edges:4:0-1,0-2,0-3,1-2")


def check_product_universal(factors=UNIVERSAL_FACTORS, max_n: int = 16,
                            max_states: int = DEFAULT_MAX_STATES):
    gs = [(s, build_family(s)) for s in factors]
    for i, (sa, a) in enumerate(gs):
        for sb, b in gs[i:]:
            if a.n * b.n > max_n:
                continue
            bound = min(a.n, b.n)
            yield _exact("prod:universal", _pspec(sa, sb), cartesian_product(a, b),
                         f"dmg <= {bound}", lambda v, b=bound: v <= b, max_states, cap=bound + 1)


UPPER_FACTORS = ("path:2", "path:3", "path:4", "cycle:4", "cycle:5", "cycle:6", "star:3",
                 "complete:3", "complete_bipartite:2,3")


def check_product_upper(factors=UPPER_FACTORS, max_n: int = 12,
                        max_states: int = DEFAULT_MAX_STATES):
    """dmg(G[]H) <= max{dmg(G)|V(H)|, dmg'(H)|V(G)|} and <= (dmg(H)+1)|V(G)|, both orders."""
    gs = [(s, build_family(s)) for s in factors]
    vals = {s: _factor_values(g, max_states) for s, g in gs}
    for sa, a in gs:
        for sb, b in gs:
            if a.n * b.n > max_n:
                continue
            (da, _), (db, dbp) = vals[sa], vals[sb]
            bound = min(max(da * b.n, dbp * a.n), (db + 1) * a.n)
            yield _exact("prod:upper", _pspec(sa, sb), cartesian_product(a, b),
                         f"dmg <= {bound}", lambda v, b=bound: v <= b, max_states, cap=bound + 1)


def check_product_trees(max_product: int = 16, max_states: int = DEFAULT_MAX_STATES):
    """dmg(T[]T') = rad-1, decided exactly with the solver clamped at rad."""
    by_n = {n: unrooted_trees(n) for n in range(2, max_product // 2 + 1)}
    for n1 in sorted(by_n):
        for n2 in sorted(by_n):
            if n2 < n1 or n1 * n2 > max_product:
                continue
            for i, t1 in enumerate(by_n[n1]):
                for t2 in by_n[n2][i if n1 == n2 else 0:]:
                    g = cartesian_product(t1, t2)
                    want = radius_ecc_centers(g)[0] - 1
                    yield _exact("prod:trees", _pspec(t1.name, t2.name), g, f"dmg = {want}",
                                 lambda v, w=want: v == w, max_states, cap=want + 1)


def check_product_stars(pairs=((2, 2), (2, 3), (3, 3)), max_states: int = DEFAULT_MAX_STATES):
    for m, n in pairs:
        yield _exact("prod:stars", _pspec(f"star:{m}", f"star:{n}"),
                     cartesian_product(star(m), star(n)), "dmg = 1", lambda v: v == 1,
                     max_states, cap=2)


def _odom_center(g: Graph, center: int) -> bool:
    return all(o_dominates(g, center, w) for w in range(g.n)
               if w != center and not g.adj[center] >> w & 1)


def check_product_dmg1(max_factor: int = 4, max_states: int = DEFAULT_MAX_STATES):
    """Products of damage-1 graphs: the o-domination bound and the size bound."""
    # one damage-1 graph per (n, degree sequence) keeps the instance list small
    reps: dict = {}
    for n in range(3, max_factor + 1):
        for _, g in enumeration_corpus(n, n):
            ok, center = dmg1_predicate(g)
            if ok:
                reps.setdefault((n, tuple(sorted(g.degree(v) for v in range(n)))), (g, center))
    reps = list(reps.values())
    for i, (a, ca) in enumerate(reps):
        for b, cb in reps[i:]:
            small, big = sorted((a.n, b.n))
            size_bound = big if big >= 2 * small else 2 * small
            bound = size_bound
            if _odom_center(a, ca) or _odom_center(b, cb):
                bound = min(bound, max(a.n, b.n))
            g = cartesian_product(a, b)
            spec = _pspec("g6:" + encode_graph6(a), "g6:" + encode_graph6(b))
            yield _exact("prod:dmg1", spec, g, f"dmg <= {bound}", lambda v, b=bound: v <= b,
                         max_states, cap=bound + 1)


def check_product_no_corner(count: int = 200, max_factor: int = 8, seed: int = 2024):
    """No Cartesian product of graphs with an edge each has a c-dominated vertex."""
    rng = random.Random(seed)
    for _ in range(count):
        fs = []
        for _ in range(2):
            while True:
                n = rng.randint(2, max_factor)
                p = rng.uniform(0.2, 0.9)
                edges = [(u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p]
                f = Graph.from_edges(n, edges)
                if f.is_connected():
                    fs.append(f)
                    break
        t0 = time.perf_counter()
        g = cartesian_product(*fs)
        w = has_c_dominated_vertex(g)
        spec = _pspec("g6:" + encode_graph6(fs[0]), "g6:" + encode_graph6(fs[1]))
        yield CheckReport("prod:no-corner", spec, "no c-dominated vertex",
                          {"witness": list(w) if w else None}, PASS if w is None else FAIL, "",
                          time.perf_counter() - t0,
                          None if w is None else counterexample(g, w[1], w[0]), "predicate")


def check_product_cycles(max_states: int = DEFAULT_MAX_STATES, cert_states: int = 10**8):
    """Cycle products: exact where the table fits, certificate sandwich otherwise."""
    from .strategies import CopProductTwoPhase, RobberShadowCycleProduct, best_response

    yield _exact("prod:cycles", "product:cycle:4xcycle:4",
                 build_family("product:cycle:4xcycle:4"), "dmg = 5", lambda v: v == 5,
                 max(max_states, 2 * 2**16 * 256))
    spec, want = "product:cycle:4xcycle:5", 8
    g = build_family(spec)
    t0 = time.perf_counter()
    try:
        up = best_response(g, CopProductTwoPhase(), max_states=cert_states)
        lo = best_response(g, RobberShadowCycleProduct(), max_states=cert_states, cap=want)
    except BudgetExceeded as exc:
        yield CheckReport("prod:cycles", spec, f"dmg = {want}", {}, INCONCLUSIVE, str(exc),
                          time.perf_counter() - t0, mode="certificate")
        return
    vals = {"upper": up.value, "upper_strategy": up.strategy, "upper_states": up.states,
            "lower": lo.value, "lower_strategy": lo.strategy, "lower_states": lo.states}
    ok = up.value <= want <= lo.value
    yield CheckReport("prod:cycles", spec, f"dmg = {want}", vals, PASS if ok else FAIL, "",
                      time.perf_counter() - t0, None if ok else counterexample(g),
                      "certificate")


NAMED_CHECKS: dict[str, Callable[..., Iterator[CheckReport]]] = {
    "cycle-formula": check_cycle_formula,
    "cycle-prime": check_cycle_prime,
    "converse-counterexamples": check_converse_counterexamples,
    "noncentral-start": check_noncentral_start,
    "prod:cliques": check_product_cliques,
    "prod:universal": check_product_universal,
    "prod:upper": check_product_upper,
    "prod:trees": check_product_trees,
    "prod:stars": check_product_stars,
    "prod:dmg1": check_product_dmg1,
    "prod:no-corner": check_product_no_corner,
    "prod:cycles": check_product_cycles,
}

ALL_CHECKS = tuple(GRAPH_CLAIMS) + tuple(NAMED_CHECKS)


def default_corpus(enum_n: int) -> Corpus:
    """Labelled enumeration up to ``enum_n`` plus cycles 3..12."""
    enum = enumeration_corpus(enum_n)
    cycles = family_corpus(f"cycle:{m}" for m in range(max(enum_n + 1, 3), 13))

    def make():
        yield from enum
        yield from cycles
    return Corpus(f"{enum.source}+{cycles.source}", make)


@dataclass
class Summary:
    counts: dict = field(default_factory=dict)

    def add(self, r: CheckReport) -> None:
        row = self.counts.setdefault(r.claim, {PASS: 0, FAIL: 0, SKIPPED: 0, INCONCLUSIVE: 0})
        row[r.verdict] += 1

    def failed(self) -> bool:
        return any(row[FAIL] for row in self.counts.values())

    def inconclusive(self) -> bool:
        return any(row[INCONCLUSIVE] for row in self.counts.values())

    def exit_code(self) -> int:
        if self.failed():
            return 1
        return 3 if self.inconclusive() else 0

    def table(self) -> str:
        lines = [f"{'claim':28} {'pass':>7} {'fail':>5} {'skip':>6} {'inc':>4}"]
        for claim, row in self.counts.items():
            lines.append(f"{claim:28} {row[PASS]:7d} {row[FAIL]:5d} {row[SKIPPED]:6d} "
                         f"{row[INCONCLUSIVE]:4d}")
        return "\n".join(lines)


def run(check: str, corpus: Corpus | None = None, threads: int = 1,
        max_states: int = DEFAULT_MAX_STATES, **options) -> Iterator[CheckReport]:
    """Run one check id (or "all").  ``options`` go to the named checks that accept them."""
    ids = ALL_CHECKS if check == "all" else (check,)
    unknown = [c for c in ids if c not in GRAPH_CLAIMS and c not in NAMED_CHECKS]
    if unknown:
        raise KeyError(f"unknown check id {unknown[0]!r}")
    graph_ids = [c for c in ids if c in GRAPH_CLAIMS]
    if graph_ids:
        yield from sweep(corpus if corpus is not None else default_corpus(5), graph_ids,
                         threads, max_states)
    for cid in ids:
        if cid in NAMED_CHECKS:
            fn = NAMED_CHECKS[cid]
            accepted = fn.__code__.co_varnames[:fn.__code__.co_argcount]
            kwargs = {k: v for k, v in options.items() if k in accepted and v is not None}
            if "max_states" in accepted:
                kwargs["max_states"] = max_states
            yield from fn(**kwargs)
