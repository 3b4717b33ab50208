"""Structural checks on constructed instances and randomised round-trip suites."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .closure import enumerate_images
from .errors import Infeasible
from .graph import Graph, count_shortest_paths, is_isometric_mask
from .instances import CnfFormula, CubeVectorSet, Digraph, HittingSetInstance, QbfInstance
from .mingen import mgs_decision
from .oracles import (
    dominating_set_exact,
    hitting_set_exact,
    iso_hull_enumerate,
    is_isometric_bfs,
    qsat2_eval,
    sat_solve,
)
from .reductions import (
    coordinate_reversal_solve,
    coordinate_to_hitting,
    dominating_to_closure,
    h_interiors,
    hitting_to_coordinate,
    hitting_to_isohull,
    qsat2_to_hullset,
    sat_to_isohull,
    triangle_gadget,
    triangle_size,
    wrap_three_terminals,
)
from .reductions.gadgets import SatReduction
from .sets import full_mask, mask_of, members


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""


# -- triangle gadget -------------------------------------------------------------

def triangle_checks(gamma: int, hull_check: bool | None = None) -> list[Check]:
    from .hulls import iso_hull_exact

    g, lay = triangle_gadget(gamma)
    corners = [lay["x"], lay["y"], lay["z"]]
    d = [int(g.dist[a, b]) for a, b in itertools.combinations(corners, 2)]
    out = [
        Check("vertex_count", g.n == triangle_size(gamma), f"{g.n}"),
        Check("corner_distances", all(x == gamma - 1 for x in d), f"{d}"),
        Check("bipartite", g.is_bipartite),
    ]
    if hull_check if hull_check is not None else gamma <= 5:
        res = iso_hull_exact(g, corners)
        out.append(Check("corner_hull_is_gadget", res.size == g.n, f"{res.size}"))
    return out


# -- observations on the 3-SAT construction -----------------------------------

def _clause_interior(red: SatReduction) -> int:
    inner = 0
    for cl in red.clauses:
        inner |= mask_of(cl["vertices"]) & ~mask_of(cl["corners"])
    return inner


def sat_observations(red: SatReduction, graph: Graph | None = None) -> list[Check]:
    """The six distance observations, checked by BFS on ``G0`` (or ``graph``)."""
    g = graph or red.graph0
    a, b, gm = red.params["alpha"], red.params["beta"], red.params["gamma"]
    lay = red.layout
    n = red.params["n"]
    dist = g.dist
    r = lay["r"]
    checks = []

    ok, bad = True, []
    for i in range(1, n + 1):
        di, gi, pi, ni = lay[f"d_{i}"], lay[f"g_{i}"], lay[f"p_{i}"], lay[f"n_{i}"]
        if not (dist[di, gi] == 2 * a and dist[pi, ni] == 2 * a and count_shortest_paths(g, di, gi) == 2):
            ok = False
            bad.append(i)
    checks.append(Check("obs1_variable_cycle", ok, f"failing variables {bad}" if bad else ""))

    ok, bad = True, []
    for i in range(1, n + 1):
        for end in (lay[f"d_{i}"], lay[f"g_{i}"]):
            if dist[r, end] != b or count_shortest_paths(g, r, end) != 1:
                ok = False
                bad.append(end)
    checks.append(Check("obs2_hub_paths", ok, f"{bad}" if bad else ""))

    ok, bad = True, []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            dj = lay[f"d_{j}"]
            for other in (lay[f"d_{i}"], lay[f"g_{i}"]):
                through_r = dist[dj, r] + dist[r, other] == 2 * b
                if dist[dj, other] != 2 * b or count_shortest_paths(g, dj, other) != 1 or not through_r:
                    ok = False
                    bad.append((j, i))
    checks.append(Check("obs3_cross_variable", ok, f"{bad}" if bad else ""))

    # Clauses sharing a pair of corner literals each contribute one path,
    # so uniqueness is checked per gadget.
    ok, bad = True, []
    for j, cl in enumerate(red.clauses, start=1):
        for u, v in itertools.combinations(cl["corners"], 2):
            sharing = [mask_of(c["vertices"]) for c in red.clauses if u in c["corners"] and v in c["corners"]]
            paths = list(_paths(g, u, v, len(sharing) + 1))
            inside = all(sum(mask_of(p) & ~gm_mask == 0 for gm_mask in sharing) == 1 for p in paths)
            if dist[u, v] != gm - 1 or len(paths) != len(sharing) or not inside:
                ok = False
                bad.append(j)
    checks.append(Check("obs4_clause_corners", ok, f"{bad}" if bad else ""))

    interior = _clause_interior(red)
    co_clause = set()
    for cl in red.clauses:
        for u, v in itertools.combinations(cl["corners"], 2):
            co_clause.add(frozenset((u, v)))
    ok, bad = True, []
    for h in range(1, n + 1):
        for k in range(h + 1, n + 1):
            for lh in (lay[f"n_{h}"], lay[f"p_{h}"]):
                for lk in (lay[f"n_{k}"], lay[f"p_{k}"]):
                    if frozenset((lh, lk)) in co_clause:
                        continue
                    if dist[lh, lk] != 2 * (a + b) or g.interval_mask(lh, lk) & interior:
                        ok = False
                        bad.append((lh, lk))
    checks.append(Check("obs5_far_literals", ok, f"{len(bad)} pairs, e.g. {bad[:3]}" if bad else ""))

    ok, bad = True, []
    corner_var = {}
    for i in range(1, n + 1):
        corner_var[lay[f"n_{i}"]] = i
        corner_var[lay[f"p_{i}"]] = i
    for j, cl in enumerate(red.clauses, start=1):
        corners = cl["corners"]
        clause_vars = {corner_var[c] for c in corners}
        for t in range(3):
            lh, lk = corners[t], corners[(t + 1) % 3]
            third = corners[(t + 2) % 3]
            side = cl["sides"][t]
            for i in range(1, n + 1):
                if i in clause_vars:
                    continue
                for v in (lay[f"d_{i}"], lay[f"g_{i}"]):
                    for u in side:
                        near = dist[u, v] <= gm / 2 + a + 2 * b
                        avoids = not g.interval_mask(u, v) >> third & 1
                        if not (near and avoids):
                            ok = False
                            bad.append((j, u, v))
    checks.append(Check("obs6_side_to_far_terminals", ok, f"{len(bad)} triples, e.g. {bad[:3]}" if bad else ""))
    return checks


def _paths(g: Graph, u: int, v: int, limit: int):
    from .graph import shortest_paths

    return itertools.islice(shortest_paths(g, u, v), limit)


def sat_forward_checks(red: SatReduction) -> list[Check]:
    """Certificate hulls for every satisfying assignment."""
    phi = red.formula
    out = []
    for bits in itertools.product((False, True), repeat=phi.num_vars):
        if not phi.satisfied_by(bits):
            continue
        hull = red.forward(bits)
        size = bin(hull).count("1")
        tag = "".join("1" if x else "0" for x in bits)
        out.append(Check(f"isometric[{tag}]", is_isometric_mask(red.graph0, hull)))
        out.append(Check(f"isometric_in_G[{tag}]", is_isometric_mask(red.graph, hull)))
        out.append(Check(f"size_within_k[{tag}]", size <= red.k, f"{size} vs k={red.k}"))
        out.append(Check(f"size_equals_nominal[{tag}]", size == red.nominal_k, f"{size} vs {red.nominal_k}"))
        out.append(Check(f"backward[{tag}]", red.backward(hull) == tuple(bits)))
    return out


# -- random instances ----------------------------------------------------------------

def random_digraph(rng: np.random.Generator, n: int, p: float = 0.3) -> Digraph:
    arcs = [(a, b) for a in range(n) for b in range(n) if a != b and rng.random() < p]
    return Digraph(n, arcs)


def random_hitting_instance(rng: np.random.Generator, u: int, m: int) -> HittingSetInstance:
    sets = []
    for _ in range(m):
        s = 0
        while s == 0:
            s = int(rng.integers(1, 1 << u))
        sets.append(s)
    return HittingSetInstance(u, tuple(sets))


def random_cnf(rng: np.random.Generator, n: int, m: int) -> CnfFormula:
    clauses = []
    for _ in range(m):
        vs = rng.choice(np.arange(1, n + 1), size=3, replace=False)
        clauses.append(tuple(int(v) if rng.random() < 0.5 else -int(v) for v in vs))
    return CnfFormula(n, tuple(clauses))


# -- suites ------------------------------------------------------------------------------

@dataclass
class SuiteReport:
    suite: str
    seed: int
    trials: int
    failures: list[str] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.failures

    def as_dict(self) -> dict:
        return {"suite": self.suite, "seed": self.seed, "trials": self.trials,
                "passed": self.passed, "failures": self.failures}


def _suite_dom2mgs(rng, report):
    n = int(rng.integers(1, 9))
    d = random_digraph(rng, n, float(rng.uniform(0.1, 0.5)))
    opt, dom = dominating_set_exact(d)
    red = dominating_to_closure(d)
    images = enumerate_images(red.oracle)
    ans = mgs_decision(red.oracle, images, n)
    if ans.minimum != opt:
        report.failures.append(f"n={n} arcs={d.sorted_arcs()}: dominating {opt} vs generator {ans.minimum}")
    gen = red.forward(dom)
    if red.oracle.evaluate(gen) != full_mask(red.oracle.universe_size):
        report.failures.append(f"forward map failed on {d.sorted_arcs()}")
    back = red.backward(ans.witness.bits)
    if not _dominates(d, back):
        report.failures.append(f"backward map failed on {d.sorted_arcs()}")


def _dominates(d: Digraph, xs) -> bool:
    xs = set(xs)
    return all(v in xs or any((a, v) in d.arcs for a in xs) for v in range(d.n))


def _suite_hs2cr(rng, report):
    u = int(rng.integers(1, 9))
    h = random_hitting_instance(rng, u, int(rng.integers(1, 7)))
    old, hit = hitting_set_exact(h)
    red = hitting_to_coordinate(h)
    new, chosen = coordinate_reversal_solve(red.instance)
    if new != old + 1:
        report.failures.append(f"{h}: hitting {old}, reversal {new}")
    if not red.instance.reverses_all(red.forward(hit)):
        report.failures.append(f"{h}: forward map does not reverse")
    back = red.backward(chosen)
    if not h.is_hitting_set(mask_of(back)):
        report.failures.append(f"{h}: backward map does not hit")


def _suite_cr2hs(rng, report):
    d = int(rng.integers(1, 6))
    count = int(rng.integers(2, 9))
    pool = rng.permutation(1 << d)[:count]
    vecs = tuple(tuple(int(p) >> e & 1 for e in range(d)) for p in pool)
    c = CubeVectorSet(d, vecs)
    try:
        h = coordinate_to_hitting(c)
    except Infeasible:  # some coordinate is constant on the sample
        return
    size, chosen = hitting_set_exact(h)
    best = next(k for k in range(len(vecs) + 1)
                for combo in itertools.combinations(range(len(vecs)), k) if c.reverses_all(combo))
    if size != best or not c.reverses_all(chosen):
        report.failures.append(f"{vecs}: hitting {size}, direct {best}")


def _suite_hs2hull(rng, report):
    u = int(rng.integers(1, 4))
    h = random_hitting_instance(rng, u, int(rng.integers(1, 4)))
    opt, hit = hitting_set_exact(h)
    red = hitting_to_isohull(h)
    size, hull = iso_hull_enumerate(red.graph, red.terminals)
    if size != red.target(opt):
        report.failures.append(f"{h}: hull {size}, target {red.target(opt)}")
    if red.graph.diameter() != 3:
        report.failures.append(f"{h}: diameter {red.graph.diameter()}")
    fwd = red.forward(hit)
    if not is_isometric_bfs(red.graph, members(fwd)):
        report.failures.append(f"{h}: forward certificate not isometric")
    if not h.is_hitting_set(mask_of(red.backward(hull.bits))):
        report.failures.append(f"{h}: backward certificate does not hit")


def _suite_sat2hull(rng, report):
    n = int(rng.integers(3, 5))
    phi = random_cnf(rng, n, int(rng.integers(1, 3)))
    red = sat_to_isohull(phi)
    for c in sat_observations(red):
        if not c.passed:
            report.failures.append(f"{phi.clauses}: {c.name} {c.detail}")
    if not red.graph0.is_bipartite or not red.graph.is_bipartite:
        report.failures.append(f"{phi.clauses}: not bipartite")
    if sat_solve(phi) is not None:
        for c in sat_forward_checks(red):
            if not c.passed and not c.name.startswith("size_equals_nominal"):
                report.failures.append(f"{phi.clauses}: {c.name} {c.detail}")


def _suite_wrap3(rng, report):
    u = int(rng.integers(1, 4))
    h = random_hitting_instance(rng, u, int(rng.integers(1, 4)))
    red = hitting_to_isohull(h)
    w = wrap_three_terminals(red.graph, red.terminals, 0)
    x, y, z = w.terminals
    if count_shortest_paths(w.graph, x, y) != 1:
        report.failures.append(f"{h}: x-y path not unique")
    for i in range(1, w.layout.params["s"] + 1):
        if count_shortest_paths(w.graph, w.layout[f"v_{i}"], z) != 1:
            report.failures.append(f"{h}: v_{i}-z path not unique")
    if w.added != w.graph.n - red.graph.n:
        report.failures.append(f"{h}: added count mismatch")


def _suite_qsat2hull(rng, report):
    for _ in range(50):
        clauses = tuple(tuple(int(rng.choice([-1, 1])) * int(rng.integers(1, 3)) for _ in range(3)) for _ in range(2))
        try:
            q = QbfInstance(1, 1, clauses)
        except ValueError:
            continue
        if not q.occurrence_problems():
            break
    else:
        return
    red = qsat2_to_hullset(q)
    g = red.graph
    pendants = [v for v in range(g.n) if g.degree(v) == 1]
    if not set(pendants) <= set(red.mandatory):
        report.failures.append(f"{clauses}: pendant outside I")
    if len(red.mandatory) + q.n_x != red.target:
        report.failures.append(f"{clauses}: |I| + n_x != target")
    delta = red.params["delta"]
    if delta % 2 == 0 or delta <= red.pre_h_graph.diameter():
        report.failures.append(f"{clauses}: bad delta {delta}")
    if not is_isometric_mask(g, full_mask(g.n) & ~h_interiors(red)):
        report.failures.append(f"{clauses}: graph without H interiors not isometric")
    ans = qsat2_eval(q)
    if ans and bin(red.forward(ans.x_witness)).count("1") != red.target:
        report.failures.append(f"{clauses}: certificate size differs from the target")


SUITES = {
    "dom2mgs": _suite_dom2mgs,
    "hs2cr": _suite_hs2cr,
    "cr2hs": _suite_cr2hs,
    "hs2hull": _suite_hs2hull,
    "sat2hull": _suite_sat2hull,
    "wrap3": _suite_wrap3,
    "qsat2hull": _suite_qsat2hull,
}


def run_suite(name: str, seed: int = 0, trials: int = 100) -> SuiteReport:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    rng = np.random.default_rng(seed)
    report = SuiteReport(name, seed, trials)
    for _ in range(trials):
        SUITES[name](rng, report)
    return report
