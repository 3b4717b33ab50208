import itertools
import random

import networkx as nx
import pytest

from hullkit.errors import Infeasible, UniverseTooLarge
from hullkit.graph import Graph, cycle_graph
from hullkit.instances import CnfFormula, Digraph, HittingSetInstance, QbfInstance
from hullkit.oracles import (
    dominating_set_exact,
    hitting_set_exact,
    is_isometric_bfs,
    iso_hull_enumerate,
    qsat2_eval,
    sat_solve,
)
from hullkit.sets import mask_of


def test_dominating_examples():
    assert dominating_set_exact(Digraph(1)) == (1, (0,))
    star = Digraph(3, {(0, 1), (0, 2)})
    assert dominating_set_exact(star) == (1, (0,))
    assert dominating_set_exact(Digraph(4))[0] == 4
    # directed triangle: each vertex covers itself and its successor
    assert dominating_set_exact(Digraph(3, {(0, 1), (1, 2), (2, 0)}))[0] == 2


def test_dominating_against_networkx():
    rng = random.Random(0)
    for _ in range(50):
        n = rng.randint(1, 8)
        h = nx.gnp_random_graph(n, 0.3, seed=rng.randrange(1000))
        sym = Digraph(n, {(a, b) for a, b in h.edges()} | {(b, a) for a, b in h.edges()})
        size, witness = dominating_set_exact(sym)
        assert nx.is_dominating_set(h, witness)
        for c in itertools.combinations(range(n), size - 1):
            assert not nx.is_dominating_set(h, c)


def test_hitting_examples():
    singles = HittingSetInstance.from_lists(4, [[0], [2], [3]])
    assert hitting_set_exact(singles) == (3, (0, 2, 3))
    assert hitting_set_exact(HittingSetInstance.from_lists(2, [[0, 1]]))[0] == 1
    assert hitting_set_exact(HittingSetInstance(3, ()))[0] == 0
    with pytest.raises(Infeasible):
        hitting_set_exact(HittingSetInstance.from_lists(2, [[0], []]))


def test_hitting_witness_is_canonical_first():
    h = HittingSetInstance.from_lists(4, [[1, 2], [2, 3], [0, 3]])
    size, w = hitting_set_exact(h)
    assert (size, w) == (2, (0, 2))


def test_sat_examples():
    assert sat_solve(CnfFormula(3, ((1, 2, 3),))) is not None
    only_x = tuple((1, sy * 2, sz * 3) for sy in (1, -1) for sz in (1, -1))
    only_not_x = tuple((-1, sy * 2, sz * 3) for sy in (1, -1) for sz in (1, -1))
    assert sat_solve(CnfFormula(3, only_x + only_not_x)) is None
    assert sat_solve(CnfFormula(3, only_x))[0] is True


def test_sat_against_enumeration():
    rng = random.Random(8)
    for _ in range(30):
        clauses = tuple(
            tuple(v * rng.choice((1, -1)) for v in rng.sample(range(1, 9), 3)) for _ in range(rng.randint(1, 40))
        )
        phi = CnfFormula(8, clauses)
        models = [a for a in itertools.product((False, True), repeat=8) if phi.satisfied_by(a)]
        got = sat_solve(phi)
        assert (got is None) == (not models)
        if got is not None:
            assert got == models[0]


def test_qbf_examples():
    # no universal variables: a satisfiable DNF is true
    assert qsat2_eval(QbfInstance(1, 0, ((1, 1, 1),)))
    # x and y, never true for every y
    ans = qsat2_eval(QbfInstance(1, 1, ((1, 2, 2),)))
    assert not ans and set(ans.refutations) == {(False,), (True,)}
    # exists x forall y: (x and y) or (x and not y) holds with x = True
    ans = qsat2_eval(QbfInstance(1, 1, ((1, 2, 2), (1, -2, -2))))
    assert ans and ans.x_witness == (True,)


def test_qbf_rejects_mixed_signs():
    with pytest.raises(ValueError):
        QbfInstance(1, 1, ((1, -1, 2),))


def test_isometric_bfs_examples():
    c6 = cycle_graph(6)
    assert is_isometric_bfs(c6, [0, 1, 2, 3])
    assert not is_isometric_bfs(c6, [0, 1, 2, 3, 4])
    assert is_isometric_bfs(c6, [])


def test_iso_hull_enumerate_examples():
    c4 = cycle_graph(4)
    size, w = iso_hull_enumerate(c4, {0, 2})
    assert size == 3 and w.members == (0, 1, 2)
    with pytest.raises(UniverseTooLarge):
        iso_hull_enumerate(Graph(16, [(i, i + 1) for i in range(15)]), {0})


def test_size_caps():
    with pytest.raises(UniverseTooLarge):
        dominating_set_exact(Digraph(21))
    with pytest.raises(UniverseTooLarge):
        hitting_set_exact(HittingSetInstance(21, (mask_of([0]),)))
