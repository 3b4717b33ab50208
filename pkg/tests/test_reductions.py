import itertools
import json
import re

import pytest

from hullkit.closure import classify, enumerate_images
from hullkit.errors import Infeasible, ParameterError
from hullkit.graph import count_shortest_paths, is_isometric
from hullkit.instances import CnfFormula, CubeVectorSet, Digraph, HittingSetInstance, QbfInstance
from hullkit.mingen import mgs_decision
from hullkit.oracles import dominating_set_exact, hitting_set_exact, iso_hull_enumerate
from hullkit.reductions import (
    build_Mk_instance,
    choose_parameters,
    coordinate_reversal_solve,
    coordinate_to_hitting,
    dominating_to_closure,
    drop_constant_coordinates,
    h_interiors,
    hitting_to_coordinate,
    hitting_to_isohull,
    normalize_hitting_family,
    qsat2_to_hullset,
    sat_to_isohull,
    triangle_gadget,
    triangle_size,
    validate_parameters,
    wrap_three_terminals,
)
from hullkit.sets import full_mask, mask_of, members
from hullkit.verify import sat_forward_checks, sat_observations, triangle_checks

WORKED = HittingSetInstance.from_lists(2, [[0], [1], [0, 1]])


# -- dominating set and generators ----------------------------------------------------------

def _dom_vs_gen(d):
    red = dominating_to_closure(d)
    c = classify(red.oracle)
    assert c.is_closure and c.atomistic
    return dominating_set_exact(d)[0], mgs_decision(red.oracle, enumerate_images(red.oracle), d.n).minimum


def test_dominating_examples():
    assert _dom_vs_gen(Digraph(1)) == (1, 1)
    assert _dom_vs_gen(Digraph(3, {(0, 1), (0, 2)})) == (1, 1)
    assert _dom_vs_gen(Digraph(4)) == (4, 4)


def test_dominating_all_digraphs_on_three_vertices():
    arcs = [(a, b) for a in range(3) for b in range(3) if a != b]
    for bits in range(1 << len(arcs)):
        d = Digraph(3, {arcs[i] for i in range(len(arcs)) if bits >> i & 1})
        opt, gen = _dom_vs_gen(d)
        assert opt == gen


def test_normalisation_keeps_the_optimum():
    sets = [0b0011, 0b0111, 0b1100, 0b1110]
    norm = normalize_hitting_family(4, sets)
    before = hitting_set_exact(HittingSetInstance(4, tuple(sets)))[0]
    after = hitting_set_exact(HittingSetInstance(len(norm.elements), norm.sets))[0]
    assert before == after
    # survivors are pairwise separated by some set
    for a, b in itertools.combinations(range(len(norm.elements)), 2):
        assert any((s >> a & 1) != (s >> b & 1) for s in norm.sets)


# -- hitting set and coordinate reversal ----------------------------------------------------

def test_two_singletons():
    red = hitting_to_coordinate(HittingSetInstance.from_lists(2, [[0], [1]], k=2))
    assert red.instance.k == 3
    assert coordinate_reversal_solve(red.instance)[0] == 3


def test_single_element_universe():
    red = hitting_to_coordinate(HittingSetInstance.from_lists(1, [[0]]))
    assert coordinate_reversal_solve(red.instance)[0] == 2


def test_empty_family_still_hits_the_ground_set():
    red = hitting_to_coordinate(HittingSetInstance(3, ()))
    assert coordinate_reversal_solve(red.instance)[0] == 2


def test_hitting_to_coordinate_rejects_empty_sets():
    with pytest.raises(Infeasible):
        hitting_to_coordinate(HittingSetInstance.from_lists(2, [[0], []]))


def test_coordinate_relation_exhaustive_small():
    for u in range(1, 4):
        all_sets = list(range(1, 1 << u))
        for m in range(0, 3):
            for fam in itertools.combinations(all_sets, m):
                h = HittingSetInstance(u, fam)
                # the ground set is always added, which only matters for the empty family
                old, hit = hitting_set_exact(HittingSetInstance(u, fam + (full_mask(u),)))
                red = hitting_to_coordinate(h)
                new, chosen = coordinate_reversal_solve(red.instance)
                assert new == old + 1
                assert red.instance.reverses_all(red.forward(hit))
                assert h.is_hitting_set(mask_of(red.backward(chosen)))


def test_q2_diagonal():
    c = CubeVectorSet(2, ((0, 0), (1, 1)))
    h = coordinate_to_hitting(c)
    assert h.m == 4
    assert hitting_set_exact(h)[0] == 2


def test_constant_coordinate_is_infeasible():
    with pytest.raises(Infeasible):
        coordinate_to_hitting(CubeVectorSet(2, ((0, 1), (1, 1))))


def test_coordinate_reversal_examples():
    for d in (1, 2, 3, 4):
        pair = CubeVectorSet(d, ((0,) * d, (1,) * d))
        assert coordinate_reversal_solve(pair)[0] == 2
    q2 = CubeVectorSet(2, ((0, 0), (0, 1), (1, 0), (1, 1)))
    assert coordinate_reversal_solve(q2)[0] == 2


def test_mk_rows():
    assert build_Mk_instance(1).vectors == ((0, 1),)
    assert build_Mk_instance(2).vectors == ((0, 0, 1, 1), (0, 1, 0, 1))
    m3 = build_Mk_instance(3)
    assert m3.dimension == 8 and len(m3.vectors) == 3


def test_mk_needs_constant_columns_dropped():
    m2 = build_Mk_instance(2)
    with pytest.raises(Infeasible):
        coordinate_reversal_solve(m2)
    reduced = drop_constant_coordinates(m2)
    assert reduced.dimension == 2
    size, chosen = coordinate_reversal_solve(reduced)
    brute = next(k for k in range(1, 3) for c in itertools.combinations(range(2), k) if reduced.reverses_all(c))
    assert size == brute == 2


# -- triangle gadget ------------------------------------------------------------------------------

@pytest.mark.parametrize("gamma,size", [(3, 4), (5, 13), (7, 28), (9, 49)])
def test_triangle_structure(gamma, size):
    assert triangle_size(gamma) == size
    for c in triangle_checks(gamma):
        assert c.passed, (c.name, c.detail)


def test_triangle_rejects_even_gamma():
    with pytest.raises(ParameterError):
        triangle_gadget(4)


def test_triangle_3_is_a_claw():
    g, lay = triangle_gadget(3)
    assert g.n == 4 and g.degree(lay["c"]) == 3


# -- hitting set to isometric hull --------------------------------------------------------------

def test_worked_example():
    red = hitting_to_isohull(WORKED)
    assert red.graph.n == 7
    assert red.graph.diameter() == 3
    size, _ = iso_hull_enumerate(red.graph, red.terminals)
    assert size == 7 == red.target(2)


def test_isohull_relation_on_small_instances():
    for u in range(1, 3):
        for m in range(1, 3):
            for fam in itertools.combinations(range(1, 1 << u), m):
                h = HittingSetInstance(u, fam)
                opt, hit = hitting_set_exact(h)
                red = hitting_to_isohull(h)
                size, hull = iso_hull_enumerate(red.graph, red.terminals)
                assert size == red.target(opt)
                assert is_isometric(red.graph, members(red.forward(hit)))
                assert h.is_hitting_set(mask_of(red.backward(hull.bits)))


def test_dummy_elements_are_recorded():
    h = HittingSetInstance.from_lists(2, [[0, 1]])
    red = hitting_to_isohull(h)
    assert red.layout.params["dummy_count"] == 1
    assert len(red.layout.groups["dummies"]) == 1


# -- 3-SAT construction ------------------------------------------------------------------------

def test_parameter_choice():
    assert choose_parameters(1) == {"alpha": 2, "beta": 4, "gamma": 11}
    assert choose_parameters(8) == {"alpha": 6, "beta": 8, "gamma": 19}


@pytest.mark.parametrize(
    "args,needle",
    [
        ((1, 3, 4, 11), "alpha"),
        ((1, 2, 4, 10), "gamma must be an odd"),
        ((9, 2, 4, 11), "2*alpha > m + 1"),
        ((1, 4, 4, 11), "2*alpha < 2*beta"),
        ((1, 2, 4, 9), "gamma - 1 > 2*beta"),
        ((1, 2, 4, 13), "gamma < 2*(alpha + beta)"),
    ],
)
def test_parameter_errors_name_the_constraint(args, needle):
    with pytest.raises(ParameterError, match=re.escape(needle)):
        validate_parameters(*args)


def test_sat_structure_and_certificates():
    phi = CnfFormula(3, ((1, 2, 3), (-1, -2, 3)))
    red = sat_to_isohull(phi)
    for c in sat_observations(red):
        assert c.passed, (c.name, c.detail)
    assert red.graph0.is_bipartite and red.graph.is_bipartite
    for c in sat_forward_checks(red):
        if not c.name.startswith("size_equals_nominal"):
            assert c.passed, (c.name, c.detail)


def test_sat_certificate_size_formula():
    phi = CnfFormula(3, ((1, 2, 3),))
    red = sat_to_isohull(phi)
    a, b, g = red.params["alpha"], red.params["beta"], red.params["gamma"]
    assert red.k == 1 + 3 * (2 * a + 2 * b - 1) + (g - 2)
    sizes = {bin(red.forward(bits)).count("1") for bits in itertools.product((0, 1), repeat=3) if phi.satisfied_by(bits)}
    assert max(sizes) <= red.k


def test_sat_layout_is_deterministic():
    phi = CnfFormula(3, ((1, -2, 3),))
    a, b = sat_to_isohull(phi), sat_to_isohull(phi)
    assert a.graph == b.graph
    assert json.dumps(a.layout.to_json()) == json.dumps(b.layout.to_json())
    roles = a.layout.roles
    assert len(set(roles.values())) == len(roles)


# -- three terminals ---------------------------------------------------------------------------

def test_wrap_worked_example():
    red = hitting_to_isohull(WORKED)
    w = wrap_three_terminals(red.graph, red.terminals, red.target(2))
    x, y, z = w.terminals
    assert len(set(w.terminals)) == 3
    assert count_shortest_paths(w.graph, x, y) == 1
    s = w.layout.params["s"]
    for i in range(1, s + 1):
        assert count_shortest_paths(w.graph, w.layout[f"v_{i}"], z) == 1
    n_prime = w.layout.params["n_prime"]
    assert w.added == w.graph.n - red.graph.n == 2 * s * n_prime + 2
    assert w.nominal_target - red.target(2) == 2 * s * n_prime + s + 1


def test_wrap_rejects_odd_distances():
    red = hitting_to_isohull(WORKED)
    with pytest.raises(ParameterError):
        wrap_three_terminals(red.graph, {red.layout["x"], red.layout["y"]}, 1)


# -- QSAT2 construction ------------------------------------------------------------------------

def test_qsat_construction():
    q = QbfInstance(1, 1, ((1, 2, 2), (-1, -2, -2)))
    red = qsat2_to_hullset(q)
    g = red.graph
    assert {v for v in range(g.n) if g.degree(v) == 1} <= set(red.mandatory)
    assert len(red.mandatory) + q.n_x == red.target == 3 * q.n_x + 2 * q.n_y + 1
    delta = red.params["delta"]
    assert delta % 2 == 1 and delta > red.pre_h_graph.diameter()
    assert is_isometric(g, members(full_mask(g.n) & ~h_interiors(red)))
    for xs in ((True,), (False,)):
        assert red.backward(red.forward(xs)) == xs


def test_qsat_needs_both_signs():
    with pytest.raises(ParameterError):
        qsat2_to_hullset(QbfInstance(1, 1, ((1, 2, 2),)))
