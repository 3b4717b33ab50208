"""Graph constructions for isometric hull and hull set hardness."""

from __future__ import annotations

from dataclasses import dataclass, field

from ..errors import Infeasible, ParameterError
from ..graph import Graph
from ..instances import CnfFormula, GadgetLayout, HittingSetInstance, QbfInstance
from ..sets import as_mask, mask_of, members
from ._builder import GraphBuilder, add_triangle, triangle_size

__all__ = [
    "triangle_size",
    "triangle_gadget",
    "choose_parameters",
    "validate_parameters",
    "HullReduction",
    "hitting_to_isohull",
    "SatReduction",
    "sat_to_isohull",
    "WrapResult",
    "wrap_three_terminals",
    "HullSetReduction",
    "qsat2_to_hullset",
    "h_interiors",
]


def triangle_gadget(gamma: int) -> tuple[Graph, GadgetLayout]:
    """The gamma-triangle on its own; corners ``x, y, z`` and center ``c``."""
    if gamma < 3 or gamma % 2 == 0:
        raise ParameterError("gamma must be odd and at least 3")
    b = GraphBuilder()
    corners = (b.vertex(), b.vertex(), b.vertex())
    c, verts, sides = add_triangle(b, gamma, corners)
    layout = GadgetLayout(
        roles={"x": corners[0], "y": corners[1], "z": corners[2], "c": c},
        groups={"sides": [v for side in sides for v in side[:-1]]},
        params={"gamma": gamma},
    )
    return b.build(), layout


# -- parameters -------------------------------------------------------------------

def validate_parameters(m: int, alpha: int, beta: int, gamma: int) -> None:
    """Raise :class:`ParameterError` naming the first violated constraint."""
    checks = [
        (alpha >= 2 and alpha % 2 == 0, "alpha must be a positive even integer"),
        (beta >= 2 and beta % 2 == 0, "beta must be a positive even integer"),
        (gamma >= 3 and gamma % 2 == 1, "gamma must be an odd integer >= 3"),
        (2 * alpha > m + 1, "2*alpha > m + 1 (reading of m << 2*alpha)"),
        (alpha < beta, "2*alpha < 2*beta"),
        (2 * beta < gamma, "2*beta < gamma"),
        (gamma - 1 > 2 * beta, "gamma - 1 > 2*beta (no ties between hub and clause routes)"),
        (gamma < 2 * (alpha + beta), "gamma < 2*(alpha + beta)"),
        (triangle_size(gamma) - 3 * gamma > m * gamma, "|T_gamma| - 3*gamma > m*gamma (reading of m << gamma)"),
    ]
    for ok, name in checks:
        if not ok:
            raise ParameterError(f"parameter constraint violated: {name}")


def choose_parameters(m: int, alpha: int | None = None, beta: int | None = None, gamma: int | None = None) -> dict:
    """Fill in missing parameters with the smallest admissible values, then validate."""
    if alpha is None:
        alpha = 2
        while 2 * alpha <= m + 1:
            alpha += 2
    if beta is None:
        beta = alpha + 2
    if gamma is None:
        gamma = 2 * beta + 3
        while gamma < 2 * (alpha + beta) and triangle_size(gamma) - 3 * gamma <= m * gamma:
            gamma += 2
    validate_parameters(m, alpha, beta, gamma)
    return {"alpha": alpha, "beta": beta, "gamma": gamma}


# -- variable gadget --------------------------------------------------------------

@dataclass
class _Variable:
    d: int
    p: int
    g: int
    n: int
    P: list[int]
    N: list[int]


def _add_variable(b: GraphBuilder, alpha: int) -> _Variable:
    d, p, g, n = (b.vertex() for _ in range(4))
    dp = b.path(d, p, alpha)
    pg = b.path(p, g, alpha)
    gn = b.path(g, n, alpha)
    nd = b.path(n, d, alpha)
    return _Variable(d, p, g, n, dp + pg[1:], nd[::-1] + gn[::-1][1:])


# -- hitting set to isometric hull ---------------------------------------------------

@dataclass
class HullReduction:
    """Bipartite diameter-3 graph and terminal set for a hitting set instance.

    ``target(k)`` is the hull size matching a hitting set of size ``k`` of
    the source instance; dummy elements added to force two disjoint sets
    are counted inside it.
    """

    source: HittingSetInstance
    graph: Graph
    terminals: int
    layout: GadgetLayout
    element_vertex: dict[int, int]
    dummies: list[int]
    m_built: int

    def target(self, k: int) -> int:
        return k + len(self.dummies) + self.m_built + 2

    def forward(self, hitting) -> int:
        return self.terminals | (1 << self.layout["y"]) | mask_of(self.dummies) | mask_of(self.element_vertex[u] for u in hitting)

    def backward(self, hull: int) -> tuple[int, ...]:
        back = {v: u for u, v in self.element_vertex.items()}
        return tuple(sorted(back[v] for v in members(hull) if v in back))


def hitting_to_isohull(h: HittingSetInstance) -> HullReduction:
    if any(s == 0 for s in h.sets):
        raise Infeasible("the family contains an empty set")
    used = sorted(set().union(*(members(s) for s in h.sets))) if h.sets else []
    sets = [list(members(s)) for s in h.sets]
    dummy_names = []
    nxt = h.universe_size

    def has_disjoint_pair():
        return any(not set(a) & set(c) for i, a in enumerate(sets) for c in sets[i + 1:])

    while not has_disjoint_pair():
        dummy_names.append(nxt)
        sets.append([nxt])
        nxt += 1
    elements = used + dummy_names
    b = GraphBuilder()
    x, y = b.vertex(), b.vertex()
    vert = {u: b.vertex() for u in elements}
    set_vs = [b.vertex() for _ in sets]
    for u in elements:
        b.edge(x, vert[u])
    for j, s in enumerate(sets):
        b.edge(y, set_vs[j])
        for u in s:
            b.edge(vert[u], set_vs[j])
    layout = GadgetLayout(
        roles={"x": x, "y": y, **{f"u_{u}": vert[u] for u in elements}, **{f"X_{j + 1}": v for j, v in enumerate(set_vs)}},
        groups={"S": [x] + set_vs, "dummies": [vert[u] for u in dummy_names], "elements": [vert[u] for u in elements]},
        params={"m": len(sets), "m_source": h.m, "dummy_count": len(dummy_names)},
    )
    return HullReduction(
        h,
        b.build(),
        mask_of([x] + set_vs),
        layout,
        {u: vert[u] for u in used},
        [vert[u] for u in dummy_names],
        len(sets),
    )


# -- 3-SAT to isometric hull --------------------------------------------------------

@dataclass
class SatReduction:
    """Graphs ``G0`` and ``G = G0 + q`` for a 3-CNF formula.

    ``k`` bounds the size of the hull built from any satisfying assignment;
    ``nominal_k`` is the closed-form bound ``n(alpha+2beta) + m gamma``.
    ``target_G`` is ``|V(G)| - 1``.
    """

    formula: CnfFormula
    graph0: Graph
    graph: Graph
    terminals: int
    layout: GadgetLayout
    params: dict
    k: int
    nominal_k: int
    variables: list[_Variable] = field(repr=False)
    clauses: list[dict] = field(repr=False)

    @property
    def target_G(self) -> int:
        return self.graph.n - 1

    def forward(self, assignment) -> int:
        """Hull subgraph for an assignment: r-paths, P or N per variable, and
        one corner path in every clause gadget with two corners present."""
        hull = self.terminals
        for key, group in self.layout.groups.items():
            if key.startswith("path_r_"):
                hull |= mask_of(group)
        for val, var in zip(assignment, self.variables):
            hull |= mask_of(var.P if val else var.N)
        for cl in self.clauses:
            present = [t for t, c in enumerate(cl["corners"]) if hull >> c & 1]
            if len(set(cl["corners"][t] for t in present)) == 3:
                hull |= mask_of(cl["vertices"])
            elif len(present) == 2:
                a, c = present
                side = cl["sides"][a] if (a + 1) % 3 == c else cl["sides"][c]
                hull |= mask_of(side)
        return hull

    def backward(self, hull: int) -> tuple[bool, ...]:
        return tuple(all(hull >> v & 1 for v in var.P) for var in self.variables)


def sat_to_isohull(phi: CnfFormula, alpha=None, beta=None, gamma=None) -> SatReduction:
    if any(len(c) != 3 for c in phi.clauses):
        raise ParameterError("every clause must have exactly three literals")
    m, n = len(phi.clauses), phi.num_vars
    params = choose_parameters(m, alpha, beta, gamma)
    a, bt, gm = params["alpha"], params["beta"], params["gamma"]
    b = GraphBuilder()
    r = b.vertex()
    roles = {"r": r}
    groups: dict[str, list[int]] = {}
    variables = []
    for i in range(1, n + 1):
        var = _add_variable(b, a)
        variables.append(var)
        roles.update({f"d_{i}": var.d, f"p_{i}": var.p, f"g_{i}": var.g, f"n_{i}": var.n})
        groups[f"P_{i}"], groups[f"N_{i}"] = var.P, var.N
        groups[f"path_r_d_{i}"] = b.path(r, var.d, bt)
        groups[f"path_r_g_{i}"] = b.path(r, var.g, bt)
    clauses = []
    for j, clause in enumerate(phi.clauses, start=1):
        corners = tuple(variables[abs(l) - 1].n if l > 0 else variables[abs(l) - 1].p for l in clause)
        c, verts, sides = add_triangle(b, gm, corners)
        roles[f"c_{j}"] = c
        groups[f"corners_{j}"] = list(corners)
        groups[f"clause_{j}"] = verts
        clauses.append({"corners": corners, "vertices": verts, "sides": sides, "center": c, "literals": clause})
    g0 = b.build()
    q = b.vertex()
    for cl in clauses:
        b.edge(q, cl["center"])
    roles["q"] = q
    g = b.build()
    terminals = mask_of([r] + [v for var in variables for v in (var.d, var.g)])
    groups["S"] = members(terminals)
    params = {**params, "n": n, "m": m}
    k = 1 + n * (2 * a + 2 * bt - 1) + m * (gm - 2)
    nominal = n * (a + 2 * bt) + m * gm
    layout = GadgetLayout(roles, groups, params)
    return SatReduction(phi, g0, g, terminals, layout, params, k, nominal, variables, clauses)


# -- three terminals ---------------------------------------------------------------

@dataclass
class WrapResult:
    """``G'`` with terminals ``{x, y, z}``.

    ``added`` is the number of new vertices, which is the exact additive
    shift between hull sizes in ``G`` and ``G'``; ``nominal_target`` uses
    the closed form ``k + 2 s n' + s + 1``.
    """

    graph: Graph
    terminals: tuple[int, int, int]
    target: int
    nominal_target: int
    added: int
    layout: GadgetLayout


def wrap_three_terminals(g: Graph, s, k: int) -> WrapResult:
    g.require_connected()
    s_list = members(as_mask(s, g.n))
    if not s_list:
        raise ParameterError("terminal set must be nonempty")
    for i, u in enumerate(s_list):
        for v in s_list[i + 1:]:
            if g.dist[u, v] % 2:
                raise ParameterError(f"terminals {u} and {v} are at odd distance")
    n = g.n
    n_prime = n if n % 2 == 0 else n + 1
    count = len(s_list)
    b = GraphBuilder()
    b.n = n
    b.edges = list(g.edges)
    x = b.vertex()
    vs = [x] + [b.vertex() for _ in range(count)]
    ws = []
    path_p = [x]
    for i in range(1, count + 1):
        if i > 1:
            w = b.vertex()
            ws.append(w)
            b.edge(path_p[-1], w)
            path_p.append(w)
        b.edge(path_p[-1], vs[i])
        path_p.append(vs[i])
    y = b.vertex()
    b.edge(path_p[-1], y)
    path_p.append(y)
    z = b.vertex()
    roles = {"x": x, "y": y, "z": z}
    groups = {"P": path_p}
    for i, u in enumerate(s_list, start=1):
        roles[f"v_{i}"] = vs[i]
        roles[f"u_{i}"] = u
        to_u = b.path(vs[i], u, n_prime)
        from_u = b.path(u, z, n_prime)
        groups[f"P_{i}"] = to_u + from_u[1:]
    for i, w in enumerate(ws, start=1):
        roles[f"w_{i}"] = w
    added = b.n - n
    layout = GadgetLayout(roles, groups, {"n_prime": n_prime, "s": count, "added": added})
    return WrapResult(b.build(), (x, y, z), k + added, k + 2 * count * n_prime + count + 1, added, layout)


# -- QSAT2 to hull set -------------------------------------------------------------

@dataclass
class HullSetReduction:
    qbf: QbfInstance
    graph: Graph
    pre_h_graph: Graph
    target: int
    mandatory: list[int]
    layout: GadgetLayout
    params: dict
    middle_edges: list[tuple[int, int]] = field(repr=False)

    def forward(self, xs) -> int:
        """Candidate hull set ``I + {s_i}`` for an assignment of ``X``."""
        picks = [hp if val else hn for val, (hp, hn) in zip(xs, self.middle_edges)]
        return mask_of(self.mandatory) | mask_of(picks)

    def backward(self, hull_set: int) -> tuple[bool, ...]:
        """Assignment read off the ``H^i`` interior vertex of a candidate set."""
        out = []
        for i in range(1, self.qbf.n_x + 1):
            path = self.layout.groups[f"H_{i}"]
            inner = [t for t, v in enumerate(path[1:-1], start=1) if hull_set >> v & 1]
            if not inner:
                raise ParameterError(f"set misses the interior of H_{i}")
            out.append(inner[0] < len(path) / 2)
        return tuple(out)


def qsat2_to_hullset(q: QbfInstance, alpha=None, beta=None, gamma=None) -> HullSetReduction:
    issues = q.occurrence_problems()
    if issues:
        raise ParameterError("occurrence assumption violated: " + "; ".join(issues))
    if any(len(c) != 3 for c in q.clauses):
        raise ParameterError("every clause must have exactly three literals")
    m = len(q.clauses)
    params = choose_parameters(m, alpha, beta, gamma)
    a, bt, gm = params["alpha"], params["beta"], params["gamma"]
    b = GraphBuilder()
    r = b.vertex()
    r2 = b.vertex()
    b.edge(r, r2)
    roles = {"r": r, "r'": r2}
    groups: dict[str, list[int]] = {}
    mandatory = [r2]
    variables = []
    for i in range(1, q.num_vars + 1):
        kind, idx = ("x", i) if i <= q.n_x else ("y", i - q.n_x)
        var = _add_variable(b, a)
        variables.append(var)
        dd, gg = b.vertex(), b.vertex()
        b.edge(dd, var.d)
        b.edge(gg, var.g)
        mandatory += [dd, gg]
        tag = f"{kind}{idx}"
        roles.update({f"d_{tag}": var.d, f"p_{tag}": var.p, f"g_{tag}": var.g, f"n_{tag}": var.n,
                      f"dd_{tag}": dd, f"gg_{tag}": gg})
        groups[f"P_{tag}"], groups[f"N_{tag}"] = var.P, var.N
        groups[f"path_r_d_{tag}"] = b.path(r, var.d, bt)
        groups[f"path_r_g_{tag}"] = b.path(r, var.g, bt)
    centers = []
    for j, clause in enumerate(q.clauses, start=1):
        corners = tuple(variables[abs(l) - 1].p if l > 0 else variables[abs(l) - 1].n for l in clause)
        c, verts, _ = add_triangle(b, gm, corners)
        centers.append(c)
        roles[f"c_{j}"] = c
        groups[f"corners_{j}"] = list(corners)
        groups[f"clause_{j}"] = verts
    qv = b.vertex()
    for c in centers:
        b.edge(qv, c)
    roles["q"] = qv
    pre = b.build()
    diameter = pre.diameter()
    delta = diameter + 1 if diameter % 2 == 0 else diameter + 2
    middle = []
    for i in range(1, q.n_x + 1):
        var = variables[i - 1]
        path = b.path(var.p, var.n, delta)
        groups[f"H_{i}"] = path
        hp, hn = path[(delta - 1) // 2], path[(delta + 1) // 2]
        roles[f"hp_{i}"], roles[f"hn_{i}"] = hp, hn
        middle.append((hp, hn))
    mandatory.sort()
    groups["I"] = mandatory
    params = {**params, "delta": delta, "pre_diameter": diameter, "n_x": q.n_x, "n_y": q.n_y, "m": m}
    layout = GadgetLayout(roles, groups, params)
    target = 3 * q.n_x + 2 * q.n_y + 1
    return HullSetReduction(q, b.build(), pre, target, mandatory, layout, params, middle)


def h_interiors(red: HullSetReduction) -> int:
    """Mask of every interior vertex of the ``H^i`` paths."""
    return mask_of(v for i in range(1, red.qbf.n_x + 1) for v in red.layout.groups[f"H_{i}"][1:-1])

