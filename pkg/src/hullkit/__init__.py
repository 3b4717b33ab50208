"""Minimum generators of pseudo-closures, geodesic and isometric hulls in
graphs, and checked builders for the hardness gadgets around them."""

from .closure import (
    ClosedFamily,
    PseudoClosureOracle,
    classify,
    closure_from_family,
    conv_oracle,
    enumerate_images,
    identity_oracle,
    punctured,
    with_representatives,
)
from .errors import (
    BudgetExhausted,
    DisconnectedGraph,
    FormatError,
    HullkitError,
    ImagesIncomplete,
    Infeasible,
    NotAPartialCube,
    NotIntersectionClosed,
    ParameterError,
    ResourceLimit,
    UnreachablePair,
    UniverseTooLarge,
)
from .graph import Graph, conv, count_shortest_paths, hypercube_embedding, interval, is_convex, is_isometric
from .hulls import (
    HullResult,
    HullSetVerdict,
    hull_number,
    hull_number_via_coordinate_reversal,
    is_hull_set,
    iso_hull_exact,
    iso_hull_greedy,
    iso_hull_number,
)
from .lattice import build_lattice, convexity_lattice, find_nongraded, is_atomistic, is_graded, join_irreducibles
from .mingen import GeneratorTable, brute_force_min_gen, mgs_decision, min_gen
from .sets import VertexSet

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BudgetExhausted",
    "ClosedFamily",
    "DisconnectedGraph",
    "FormatError",
    "GeneratorTable",
    "Graph",
    "HullResult",
    "HullSetVerdict",
    "HullkitError",
    "ImagesIncomplete",
    "Infeasible",
    "NotAPartialCube",
    "NotIntersectionClosed",
    "ParameterError",
    "PseudoClosureOracle",
    "ResourceLimit",
    "UnreachablePair",
    "UniverseTooLarge",
    "VertexSet",
    "brute_force_min_gen",
    "build_lattice",
    "classify",
    "closure_from_family",
    "conv",
    "conv_oracle",
    "convexity_lattice",
    "count_shortest_paths",
    "enumerate_images",
    "find_nongraded",
    "hull_number",
    "hull_number_via_coordinate_reversal",
    "hypercube_embedding",
    "identity_oracle",
    "interval",
    "is_atomistic",
    "is_convex",
    "is_graded",
    "is_hull_set",
    "is_isometric",
    "iso_hull_exact",
    "iso_hull_greedy",
    "iso_hull_number",
    "join_irreducibles",
    "mgs_decision",
    "min_gen",
    "punctured",
    "with_representatives",
]
