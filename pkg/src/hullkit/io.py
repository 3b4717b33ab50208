"""Text formats for graphs, digraphs, set families, CNF and QBF instances.

Every ``format_*`` function emits a canonical form that its ``parse_*``
counterpart reads back to an equal value.
"""

from __future__ import annotations

from pathlib import Path

from .closure import ClosedFamily
from .errors import FormatError
from .graph import Graph
from .instances import CnfFormula, Digraph, HittingSetInstance, QbfInstance
from .sets import canonical_sort, mask_of, members


def _content_lines(text: str, comment: str = "#") -> list[str]:
    out = []
    for raw in text.splitlines():
        line = raw.split(comment, 1)[0].strip()
        if line:
            out.append(line)
    return out


def _ints(line: str, lineno: str = "") -> list[int]:
    try:
        return [int(t) for t in line.split()]
    except ValueError as exc:
        raise FormatError(f"expected integers{lineno}: {line!r}") from exc


# -- graphs -----------------------------------------------------------------------

def parse_graph(text: str) -> Graph:
    lines = _content_lines(text)
    if not lines:
        raise FormatError("empty graph file")
    head = _ints(lines[0])
    if len(head) != 2:
        raise FormatError("graph header must be 'n m'")
    n, m = head
    body = lines[1:]
    if len(body) != m:
        raise FormatError(f"header promises {m} edges, found {len(body)}")
    edges = []
    for line in body:
        e = _ints(line)
        if len(e) != 2:
            raise FormatError(f"edge line must hold two vertices: {line!r}")
        edges.append(tuple(e))
    try:
        g = Graph(n, edges)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if g.m != m:
        raise FormatError("duplicate edges in graph file")
    return g


def format_graph(g: Graph) -> str:
    return "".join([f"{g.n} {g.m}\n"] + [f"{u} {v}\n" for u, v in g.edges])


def parse_digraph(text: str) -> Digraph:
    lines = _content_lines(text)
    if not lines or not lines[0].startswith("d"):
        raise FormatError("digraph header must be 'd n m'")
    head = _ints(lines[0][1:])
    if len(head) != 2:
        raise FormatError("digraph header must be 'd n m'")
    n, m = head
    arcs = [tuple(_ints(line)) for line in lines[1:]]
    if len(arcs) != m or any(len(a) != 2 for a in arcs):
        raise FormatError(f"expected {m} arc lines 'u v'")
    try:
        d = Digraph(n, arcs)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if len(d.arcs) != m:
        raise FormatError("duplicate arcs in digraph file")
    return d


def format_digraph(d: Digraph) -> str:
    arcs = d.sorted_arcs()
    return "".join([f"d {d.n} {len(arcs)}\n"] + [f"{a} {b}\n" for a, b in arcs])


# -- set families -------------------------------------------------------------------

def parse_set_family(text: str) -> tuple[int, list[int]]:
    """Returns ``(universe_size, masks)`` in file order.

    After the header exactly ``K`` lines follow; an empty line is the empty
    set, so blank lines are significant here.
    """
    raw = [line.split("#", 1)[0].rstrip() for line in text.splitlines()]
    start = next((i for i, line in enumerate(raw) if line.strip()), None)
    if start is None:
        raise FormatError("empty set-family file")
    head = raw[start].split()
    if len(head) != 4 or head[0] != "universe" or head[2] != "count":
        raise FormatError("set-family header must be 'universe N count K'")
    try:
        n, k = int(head[1]), int(head[3])
    except ValueError as exc:
        raise FormatError("set-family header must be 'universe N count K'") from exc
    body = raw[start + 1:start + 1 + k]
    if len(body) < k:
        raise FormatError(f"header promises {k} sets, found {len(body)}")
    if any(line.strip() for line in raw[start + 1 + k:]):
        raise FormatError("trailing content after the last set")
    sets = []
    for line in body:
        items = _ints(line)
        if any(not 0 <= v < n for v in items):
            raise FormatError(f"element outside 0..{n - 1}: {line!r}")
        sets.append(mask_of(items))
    return n, sets


def format_set_family(n: int, sets, *, canonical: bool = True) -> str:
    seq = canonical_sort(set(sets)) if canonical else list(sets)
    lines = [f"universe {n} count {len(seq)}"] + [" ".join(map(str, members(s))) for s in seq]
    return "\n".join(lines) + "\n"


def parse_closed_family(text: str) -> ClosedFamily:
    n, sets = parse_set_family(text)
    return ClosedFamily(n, sets)


def parse_hitting_instance(text: str, k: int | None = None) -> HittingSetInstance:
    n, sets = parse_set_family(text)
    return HittingSetInstance(n, tuple(sets), k)


def format_hitting_instance(h: HittingSetInstance) -> str:
    return format_set_family(h.universe_size, h.sets, canonical=False)


# -- DIMACS --------------------------------------------------------------------------

def _dimacs_clauses(lines: list[str]) -> list[tuple[int, ...]]:
    tokens = [int(t) for line in lines for t in line.split()]
    clauses, cur = [], []
    for t in tokens:
        if t == 0:
            clauses.append(tuple(cur))
            cur = []
        else:
            cur.append(t)
    if cur:
        raise FormatError("last clause is not terminated by 0")
    return clauses


def _dimacs_header(lines: list[str]) -> tuple[int, int, list[str]]:
    if not lines or not lines[0].startswith("p"):
        raise FormatError("missing 'p cnf V C' header")
    parts = lines[0].split()
    if len(parts) != 4 or parts[1] != "cnf":
        raise FormatError("header must be 'p cnf V C'")
    return int(parts[2]), int(parts[3]), lines[1:]


def _strip_dimacs_comments(text: str) -> list[str]:
    return [line.strip() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("c")]


def parse_dimacs(text: str) -> CnfFormula:
    nv, nc, body = _dimacs_header(_strip_dimacs_comments(text))
    try:
        clauses = _dimacs_clauses(body)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if len(clauses) != nc:
        raise FormatError(f"header promises {nc} clauses, found {len(clauses)}")
    try:
        return CnfFormula(nv, tuple(clauses))
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def format_dimacs(phi: CnfFormula) -> str:
    lines = [f"p cnf {phi.num_vars} {len(phi.clauses)}"] + [" ".join(map(str, c)) + " 0" for c in phi.clauses]
    return "\n".join(lines) + "\n"


def parse_qdimacs(text: str) -> QbfInstance:
    """Prefix ``e ... 0`` then ``a ... 0``; matrix lines are read as 3-literal DNF terms.

    Variables are renumbered: existentials first (in prefix order), then
    universals.
    """
    nv, nc, body = _dimacs_header(_strip_dimacs_comments(text))
    ex, un, rest = [], [], []
    for line in body:
        if line[0] in "ea":
            if rest:
                raise FormatError("quantifier line after the matrix")
            vs = _ints(line[1:])
            if not vs or vs[-1] != 0:
                raise FormatError("quantifier line must end with 0")
            if line[0] == "e":
                if un:
                    raise FormatError("only exists-forall prefixes are supported")
                ex.extend(vs[:-1])
            else:
                un.extend(vs[:-1])
        else:
            rest.append(line)
    order = ex + un
    if sorted(order) != list(range(1, nv + 1)):
        raise FormatError("every variable must be quantified exactly once")
    renum = {v: i + 1 for i, v in enumerate(order)}
    try:
        terms = _dimacs_clauses(rest)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc
    if len(terms) != nc:
        raise FormatError(f"header promises {nc} terms, found {len(terms)}")
    mapped = tuple(tuple(renum[abs(l)] * (1 if l > 0 else -1) for l in t) for t in terms)
    try:
        return QbfInstance(len(ex), len(un), mapped)
    except ValueError as exc:
        raise FormatError(str(exc)) from exc


def format_qdimacs(q: QbfInstance) -> str:
    lines = [f"p cnf {q.num_vars} {len(q.clauses)}"]
    if q.n_x:
        lines.append("e " + " ".join(str(v) for v in range(1, q.n_x + 1)) + " 0")
    if q.n_y:
        lines.append("a " + " ".join(str(v) for v in range(q.n_x + 1, q.num_vars + 1)) + " 0")
    lines += [" ".join(map(str, c)) + " 0" for c in q.clauses]
    return "\n".join(lines) + "\n"


# -- file helpers -------------------------------------------------------------------------

def read_text(path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc}") from exc


def read_graph(path) -> Graph:
    return parse_graph(read_text(path))


def parse_vertex_list(text: str) -> list[int]:
    """``"0,2,5"`` to ``[0, 2, 5]``; an empty string is the empty set."""
    text = text.strip()
    if not text:
        return []
    try:
        return sorted({int(t) for t in text.split(",")})
    except ValueError as exc:
        raise FormatError(f"bad vertex list {text!r}") from exc
