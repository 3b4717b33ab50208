import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hullkit.errors import FormatError
from hullkit.graph import Graph, cycle_graph
from hullkit.instances import CnfFormula, Digraph, HittingSetInstance, QbfInstance
from hullkit.io import (
    format_digraph,
    format_dimacs,
    format_graph,
    format_hitting_instance,
    format_qdimacs,
    format_set_family,
    parse_closed_family,
    parse_digraph,
    parse_dimacs,
    parse_graph,
    parse_hitting_instance,
    parse_qdimacs,
    parse_set_family,
    parse_vertex_list,
    read_text,
)


@st.composite
def graphs(draw):
    n = draw(st.integers(1, 9))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    edges = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph(n, edges)


@settings(max_examples=60, deadline=None)
@given(graphs())
def test_graph_round_trip(g):
    text = format_graph(g)
    assert parse_graph(text) == g
    assert format_graph(parse_graph(text)) == text


def test_graph_comments_and_order():
    text = "# a square\n4 4\n3 0  # wrap\n1 0\n\n2 1\n2 3\n"
    g = parse_graph(text)
    assert g == cycle_graph(4)
    assert format_graph(g) == "4 4\n0 1\n0 3\n1 2\n2 3\n"


@pytest.mark.parametrize(
    "text",
    ["", "3\n", "3 1\n", "3 1\n0 1 2\n", "2 1\n0 2\n", "2 1\n0 0\n", "2 2\n0 1\n1 0\n", "2 1\na b\n"],
)
def test_graph_errors(text):
    with pytest.raises(FormatError):
        parse_graph(text)


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 6).flatmap(
    lambda n: st.tuples(st.just(n), st.sets(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1))))
))
def test_digraph_round_trip(data):
    n, arcs = data
    arcs = {(a, b) for a, b in arcs if a != b}
    d = Digraph(n, arcs)
    back = parse_digraph(format_digraph(d))
    assert back.n == n and set(back.arcs) == arcs


def test_digraph_errors():
    for text in ("3 1\n0 1\n", "d 3 2\n0 1\n", "d 2 1\n0 5\n"):
        with pytest.raises(FormatError):
            parse_digraph(text)


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 7).flatmap(lambda n: st.tuples(st.just(n), st.lists(st.integers(0, (1 << n) - 1)))))
def test_set_family_round_trip(data):
    n, sets = data
    m, back = parse_set_family(format_set_family(n, sets, canonical=False))
    assert m == n and back == sets
    _, canon = parse_set_family(format_set_family(n, sets))
    assert sorted(canon) == sorted(set(sets))


def test_blank_line_is_the_empty_set():
    text = "# family\nuniverse 3 count 3\n\n0 2  # comment\n1\n"
    n, sets = parse_set_family(text)
    assert n == 3 and sets == [0, 0b101, 0b010]


@pytest.mark.parametrize(
    "text",
    [
        "",
        "universe 3\n0\n",
        "universe 3 count 2\n0\n",
        "universe 3 count 1\n0\n1\n",
        "universe 3 count 1\n3\n",
        "universe x count 1\n0\n",
        "universe 3 count 1\n0 q\n",
    ],
)
def test_set_family_errors(text):
    with pytest.raises(FormatError):
        parse_set_family(text)


def test_closed_and_hitting_wrappers():
    fam = parse_closed_family("universe 2 count 4\n\n0\n1\n0 1\n")
    assert set(fam.sets) == {0, 1, 2, 3}
    h = parse_hitting_instance("universe 3 count 2\n0 1\n2\n", k=2)
    assert h.k == 2 and h.sets == (0b011, 0b100)
    assert parse_hitting_instance(format_hitting_instance(h)).sets == h.sets


def test_hitting_round_trip_keeps_order():
    h = HittingSetInstance.from_lists(4, [[3], [0, 1], [2]])
    assert parse_hitting_instance(format_hitting_instance(h)).sets == h.sets


@settings(max_examples=40, deadline=None)
@given(st.lists(
    st.lists(st.integers(1, 5), min_size=1, max_size=3, unique=True).flatmap(
        lambda vs: st.tuples(*[st.sampled_from((v, -v)) for v in vs])
    ),
    max_size=6,
))
def test_dimacs_round_trip(clauses):
    phi = CnfFormula(5, tuple(clauses))
    assert parse_dimacs(format_dimacs(phi)) == phi


def test_dimacs_comments_and_line_breaks():
    phi = parse_dimacs("c example\np cnf 3 2\n1 -2\n 3 0 -1 2 3 0\n")
    assert phi.clauses == ((1, -2, 3), (-1, 2, 3))


@pytest.mark.parametrize("text", ["1 2 0\n", "p cnf 2 1\n1 2\n", "p cnf 2 2\n1 2 0\n", "p sat 2 1\n1 0\n"])
def test_dimacs_errors(text):
    with pytest.raises(FormatError):
        parse_dimacs(text)


def test_qdimacs_renumbers_existentials_first():
    text = "p cnf 3 1\ne 3 0\na 1 2 0\n3 -1 2 0\n"
    q = parse_qdimacs(text)
    assert (q.n_x, q.n_y) == (1, 2)
    assert q.clauses == ((1, -2, 3),)


def test_qdimacs_round_trip():
    q = QbfInstance(1, 2, ((1, 2, 3), (-1, -2, -3)))
    assert parse_qdimacs(format_qdimacs(q)) == q


@pytest.mark.parametrize(
    "text",
    [
        "p cnf 2 1\na 2 0\ne 1 0\n1 2 2 0\n",
        "p cnf 2 1\ne 1 0\n1 2 2 0\n",
        "p cnf 2 1\ne 1 0\na 2\n1 2 2 0\n",
        "p cnf 2 1\ne 1 0\n1 2 2 0\na 2 0\n",
    ],
)
def test_qdimacs_errors(text):
    with pytest.raises(FormatError):
        parse_qdimacs(text)


def test_vertex_lists(tmp_path):
    assert parse_vertex_list("5,0, 2") == [0, 2, 5]
    assert parse_vertex_list("") == []
    with pytest.raises(FormatError):
        parse_vertex_list("1,x")
    with pytest.raises(FormatError):
        read_text(tmp_path / "missing.txt")
