"""Command-line interface.

Every subcommand prints one JSON run report on standard output::

    {"command": [...], "inputs": {path: sha256}, "result": {...},
     "timing": {"seconds": t}, "seed": s, "version": v}

Exit codes: 0 answered, 1 negative or infeasible answer, 2 usage or
format error, 3 resource budget exceeded.

File formats:

* graph: header ``n m`` then ``m`` lines ``u v``; ``#`` comments and blank
  lines are ignored.
* digraph: the same with header ``d n m``.
* set family: header ``universe N count K`` then exactly ``K`` lines of
  sorted element indices; an empty line is the empty set.
* formulas: DIMACS ``p cnf``; QDIMACS with an ``e`` block then an ``a``
  block, whose matrix lines are read as DNF terms.
* cube vectors (``cr2hs`` input, ``hs2cr`` and ``mk`` output): a set family
  whose universe is the dimension and whose lines are the supports of the
  vectors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time
from pathlib import Path

from . import __version__
from . import io as hio
from .closure import (
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    classify,
    closure_from_family,
    conv_oracle,
    enumerate_images,
    punctured,
)
from .errors import BudgetExhausted, FormatError, HullkitError, Infeasible, ResourceLimit, UniverseTooLarge
from .graph import Graph, conv
from .hulls import (
    DEFAULT_MAX_CLOSED_SETS,
    DEFAULT_NODE_BUDGET,
    hull_number,
    hull_number_via_coordinate_reversal,
    is_hull_set,
    iso_hull_exact,
    iso_hull_greedy,
    iso_hull_number,
)
from .instances import CubeVectorSet
from .lattice import build_lattice, is_atomistic, is_graded, join_irreducibles, to_dot
from .mingen import min_gen
from .sets import mask_of, members, popcount
from . import reductions as red
from .verify import SUITES, run_suite

EXIT_OK, EXIT_NEGATIVE, EXIT_USAGE, EXIT_RESOURCE = 0, 1, 2, 3


class _Answer(Exception):
    """Carries a result payload together with a non-zero exit code."""

    def __init__(self, payload: dict, code: int):
        super().__init__(payload)
        self.payload, self.code = payload, code


class _Context:
    def __init__(self):
        self.inputs: dict[str, str] = {}

    def read(self, path: str) -> str:
        text = hio.read_text(path)
        self.inputs[path] = hashlib.sha256(text.encode()).hexdigest()
        return text

    def graph(self, path: str) -> Graph:
        return hio.parse_graph(self.read(path))


def _looks_like_family(text: str) -> bool:
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            return line.startswith("universe")
    return False


def _oracle_from_file(ctx: _Context, path: str):
    """A graph file yields geodesic convexity, a set family its closure."""
    text = ctx.read(path)
    if _looks_like_family(text):
        return closure_from_family(hio.parse_closed_family(text))
    return conv_oracle(hio.parse_graph(text))


def _vectors_text(c: CubeVectorSet) -> str:
    return hio.format_set_family(c.dimension, [mask_of(i for i, b in enumerate(v) if b) for v in c.vectors], canonical=False)


def _parse_vectors(text: str, k: int | None) -> CubeVectorSet:
    dim, supports = hio.parse_set_family(text)
    vecs = tuple(tuple(s >> i & 1 for i in range(dim)) for s in supports)
    return CubeVectorSet(dim, vecs, k)


def _set_arg(args, g: Graph) -> int:
    items = hio.parse_vertex_list(args.set)
    if any(not 0 <= v < g.n for v in items):
        raise FormatError(f"--set mentions a vertex outside 0..{g.n - 1}")
    return mask_of(items)


def _write_outputs(args, body: str, layout: dict | None, suffix: str) -> dict:
    out: dict = {}
    if args.out:
        path = Path(args.out + suffix)
        path.write_text(body)
        out["file"] = str(path)
        if layout is not None:
            lpath = Path(args.out + ".layout.json")
            lpath.write_text(json.dumps(layout, indent=2, sort_keys=True) + "\n")
            out["layout_file"] = str(lpath)
    else:
        out["text"] = body
    if layout is not None:
        out["layout"] = layout
    return out


# -- subcommands ---------------------------------------------------------------------

def cmd_mingen(args, ctx):
    oracle = _oracle_from_file(ctx, args.input)
    images = enumerate_images(oracle, max_sets=args.max_closed_sets)
    table = min_gen(oracle, images, debug=args.debug)
    out = table.as_dict()
    full = (1 << oracle.universe_size) - 1
    if full in table.labels:
        out["minimum_generator"] = members(table.labels[full])
        out["minimum_size"] = popcount(table.labels[full])
    return out


def cmd_hull_number(args, ctx):
    g = ctx.graph(args.graph)
    if args.method == "coordinate-reversal":
        size, witness = hull_number_via_coordinate_reversal(g)
    else:
        size, witness = hull_number(g, max_closed_sets=args.max_closed_sets)
    return {"size": size, "vertices": list(witness.members), "method": args.method}


def cmd_conv(args, ctx):
    g = ctx.graph(args.graph)
    hull = conv(g, _set_arg(args, g))
    return {"size": len(hull), "vertices": list(hull.members)}


def cmd_iso_hull(args, ctx):
    g = ctx.graph(args.graph)
    s = _set_arg(args, g)
    if args.greedy:
        return iso_hull_greedy(g, s).as_dict()
    try:
        return iso_hull_exact(g, s, budget=args.budget).as_dict()
    except BudgetExhausted as exc:
        payload = exc.best.as_dict() if exc.best is not None else {"optimal": False}
        payload["error"] = str(exc)
        raise _Answer(payload, EXIT_RESOURCE) from exc


def cmd_iso_hull_number(args, ctx):
    size, witness = iso_hull_number(ctx.graph(args.graph))
    return {"size": size, "vertices": list(witness.members)}


def cmd_hull_set_check(args, ctx):
    g = ctx.graph(args.graph)
    verdict = is_hull_set(g, _set_arg(args, g), budget=args.budget)
    payload = {"status": verdict.status, "witness": None if verdict.witness is None else list(verdict.witness.members)}
    if verdict.status == "not_hull_set":
        raise _Answer(payload, EXIT_NEGATIVE)
    if verdict.status == "unknown":
        raise _Answer(payload, EXIT_RESOURCE)
    return payload


def cmd_lattice(args, ctx):
    text = ctx.read(args.input)
    if _looks_like_family(text):
        fam = hio.parse_closed_family(text)
    else:
        fam = enumerate_images(conv_oracle(hio.parse_graph(text)), max_sets=args.max_closed_sets)
    lat = build_lattice(fam)
    grade = is_graded(lat)
    out = {
        "elements": [members(e) for e in lat.elements],
        "covers": [list(c) for c in lat.covers],
        "join_irreducibles": [members(lat.elements[i]) for i in join_irreducibles(lat)],
        "atomistic": is_atomistic(lat),
        **grade.as_dict(lat),
    }
    if args.dot:
        Path(args.dot).write_text(to_dot(lat))
        out["dot_file"] = args.dot
    return out


def _triangle(gamma: int, args):
    g, layout = red.triangle_gadget(gamma)
    out = {"n": g.n, "m": g.m}
    out.update(_write_outputs(args, hio.format_graph(g), layout.to_json(), ".graph"))
    return out


def cmd_reduce(args, ctx):
    name = args.reduction
    if name == "triangle":
        if args.gamma is None:
            raise FormatError("reduce triangle needs --gamma")
        return _triangle(args.gamma, args)
    if name == "mk":
        if args.k is None:
            raise FormatError("reduce mk needs --k")
        c = red.build_Mk_instance(args.k)
        return {"dimension": c.dimension, "vectors": len(c.vectors), **_write_outputs(args, _vectors_text(c), None, ".vectors")}
    if args.input is None:
        raise FormatError(f"reduce {name} needs an input file")
    text = ctx.read(args.input)
    if name == "dom2mgs":
        r = red.dominating_to_closure(hio.parse_digraph(text))
        fam = enumerate_images(r.oracle)
        body = hio.format_set_family(fam.universe_size, fam.sets)
        out = {"universe_size": fam.universe_size, "closed_sets": len(fam), "elements": list(r.elements)}
        return {**out, **_write_outputs(args, body, None, ".family")}
    if name == "hs2cr":
        r = red.hitting_to_coordinate(hio.parse_hitting_instance(text, args.k))
        c = r.instance
        out = {"dimension": c.dimension, "vectors": len(c.vectors), "target": c.k,
               "elements": list(r.elements), "x_index": r.x_index}
        return {**out, **_write_outputs(args, _vectors_text(c), None, ".vectors")}
    if name == "cr2hs":
        h = red.coordinate_to_hitting(_parse_vectors(text, args.k))
        out = {"universe_size": h.universe_size, "sets": h.m, "target": h.k}
        return {**out, **_write_outputs(args, hio.format_hitting_instance(h), None, ".family")}
    if name == "hs2hull":
        h = hio.parse_hitting_instance(text, args.k)
        r = red.hitting_to_isohull(h)
        out = {"n": r.graph.n, "m": r.graph.m, "terminals": members(r.terminals),
               "target": None if h.k is None else r.target(h.k)}
        return {**out, **_write_outputs(args, hio.format_graph(r.graph), r.layout.to_json(), ".graph")}
    if name == "sat2hull":
        r = red.sat_to_isohull(hio.parse_dimacs(text), args.alpha, args.beta, args.gamma)
        out = {"n": r.graph.n, "m": r.graph.m, "terminals": members(r.terminals),
               "k": r.k, "nominal_k": r.nominal_k, "target": r.target_G}
        return {**out, **_write_outputs(args, hio.format_graph(r.graph), r.layout.to_json(), ".graph")}
    if name == "wrap3":
        g = hio.parse_graph(text)
        if args.set is None or args.k is None:
            raise FormatError("reduce wrap3 needs --set and --k")
        w = red.wrap_three_terminals(g, _set_arg(args, g), args.k)
        out = {"n": w.graph.n, "m": w.graph.m, "terminals": list(w.terminals),
               "target": w.target, "nominal_target": w.nominal_target}
        return {**out, **_write_outputs(args, hio.format_graph(w.graph), w.layout.to_json(), ".graph")}
    if name == "qsat2hull":
        r = red.qsat2_to_hullset(hio.parse_qdimacs(text), args.alpha, args.beta, args.gamma)
        out = {"n": r.graph.n, "m": r.graph.m, "mandatory": r.mandatory, "target": r.target}
        return {**out, **_write_outputs(args, hio.format_graph(r.graph), r.layout.to_json(), ".graph")}
    raise FormatError(f"unknown reduction {name!r}")  # pragma: no cover


def cmd_gadget(args, ctx):
    return _triangle(args.gamma, args)


def cmd_verify(args, ctx):
    report = run_suite(args.suite, seed=args.seed, trials=args.trials)
    status = "PASS" if report.passed else "FAIL"
    print(f"{'suite':<10} {'seed':>6} {'trials':>7} {'failures':>9} result", file=sys.stderr)
    print(f"{report.suite:<10} {report.seed:>6} {report.trials:>7} {len(report.failures):>9} {status}", file=sys.stderr)
    if not report.passed:
        raise _Answer(report.as_dict(), EXIT_NEGATIVE)
    return report.as_dict()


def cmd_classify(args, ctx):
    oracle = _oracle_from_file(ctx, args.input)
    if args.puncture:
        big, small = (hio.parse_vertex_list(p) for p in args.puncture)
        oracle = punctured(oracle, big, small)
    return classify(oracle, args.mode, seed=args.seed, trials=args.trials).as_dict()


# -- parser ------------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="hullkit",
        description=__doc__.split("\n\n", 1)[0],
        epilog=__doc__.split("\n\n", 1)[1],
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("--version", action="version", version=f"hullkit {__version__}")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_):
        sp = sub.add_parser(name, help=help_, description=help_)
        sp.set_defaults(func=func)
        return sp

    sp = add("mingen", cmd_mingen, "minimum generators of every closed set (graph: convexity; family: its closure)")
    sp.add_argument("input", help="graph or set-family file")
    sp.add_argument("--max-closed-sets", type=int, default=DEFAULT_MAX_CLOSED_SETS)
    sp.add_argument("--debug", action="store_true", help="cross-check incremental extensions")

    sp = add("hull-number", cmd_hull_number, "geodesic hull number of a connected graph")
    sp.add_argument("graph")
    sp.add_argument("--method", choices=["exact", "coordinate-reversal"], default="exact")
    sp.add_argument("--max-closed-sets", type=int, default=DEFAULT_MAX_CLOSED_SETS)

    sp = add("conv", cmd_conv, "geodesic convex hull of a vertex set")
    sp.add_argument("graph")
    sp.add_argument("--set", required=True, help="comma separated vertices, e.g. 0,2,5")

    sp = add("iso-hull", cmd_iso_hull, "smallest isometric superset of a vertex set")
    sp.add_argument("graph")
    sp.add_argument("--set", required=True)
    mode = sp.add_mutually_exclusive_group()
    mode.add_argument("--exact", action="store_true", help="branch and bound (default)")
    mode.add_argument("--greedy", action="store_true", help="cheapest-path repair heuristic")
    sp.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET, help="search node limit")

    sp = add("iso-hull-number", cmd_iso_hull_number, "isometric hull number (n <= 15)")
    sp.add_argument("graph")

    sp = add("hull-set-check", cmd_hull_set_check, "is V the only isometric superset of the set?")
    sp.add_argument("graph")
    sp.add_argument("--set", required=True)
    sp.add_argument("--budget", type=int, default=DEFAULT_NODE_BUDGET)

    sp = add("lattice", cmd_lattice, "Hasse diagram, gradedness and atomisticity of a closed family")
    sp.add_argument("input", help="graph (convex sets) or set-family file")
    sp.add_argument("--dot", metavar="FILE", help="also write the Hasse diagram as DOT")
    sp.add_argument("--max-closed-sets", type=int, default=DEFAULT_MAX_CLOSED_SETS)

    sp = add("reduce", cmd_reduce, "build a reduction instance")
    sp.add_argument("reduction", choices=["dom2mgs", "hs2cr", "cr2hs", "hs2hull", "sat2hull", "wrap3", "qsat2hull", "triangle", "mk"])
    sp.add_argument("input", nargs="?", help="digraph, set-family, vectors, graph, DIMACS or QDIMACS file")
    sp.add_argument("--k", type=int, help="budget of the source instance (mk: dimension)")
    sp.add_argument("--set", help="terminals for wrap3")
    sp.add_argument("--alpha", type=int)
    sp.add_argument("--beta", type=int)
    sp.add_argument("--gamma", type=int)
    sp.add_argument("--out", metavar="PREFIX", help="write PREFIX.graph (or .family/.vectors) and PREFIX.layout.json")

    sp = add("gadget", cmd_gadget, "standalone gadgets")
    sp.add_argument("kind", choices=["triangle"])
    sp.add_argument("--gamma", type=int, required=True)
    sp.add_argument("--out", metavar="PREFIX")

    sp = add("verify", cmd_verify, "randomised round-trip checks of a reduction")
    sp.add_argument("suite", choices=sorted(SUITES))
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--trials", type=int, default=100)

    sp = add("classify-operator", cmd_classify, "check the closure axioms")
    sp.add_argument("input", help="graph or set-family file")
    sp.add_argument("--puncture", nargs=2, metavar=("BIG", "SMALL"), help="classify Y -> cl(Y + BIG) - SMALL")
    sp.add_argument("--mode", choices=["exhaustive", "sampled"], default="exhaustive")
    sp.add_argument("--seed", type=int, default=DEFAULT_SEED)
    sp.add_argument("--trials", type=int, default=DEFAULT_TRIALS)
    return p


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    ctx = _Context()
    start = time.perf_counter()
    code = EXIT_OK
    try:
        result = args.func(args, ctx)
    except _Answer as ans:
        result, code = ans.payload, ans.code
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ResourceLimit, UniverseTooLarge) as exc:
        print(f"error: {exc}", file=sys.stderr)
        result, code = {"error": str(exc)}, EXIT_RESOURCE
    except Infeasible as exc:
        result, code = {"infeasible": str(exc)}, EXIT_NEGATIVE
    except (HullkitError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    report = {
        "command": argv,
        "inputs": ctx.inputs,
        "result": result,
        "timing": {"seconds": round(time.perf_counter() - start, 6)},
        "seed": getattr(args, "seed", None),
        "version": __version__,
    }
    json.dump(report, sys.stdout, sort_keys=True)
    sys.stdout.write("\n")
    return code


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
