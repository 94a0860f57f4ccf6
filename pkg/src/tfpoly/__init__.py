"""Exact tension-flow counting polynomials for multigraphs."""

from .algebra import (
    InterpolationError,
    IntMatrix,
    MultiPoly,
    RationalMatrix,
    interpolate_univariate,
    rational_rank,
    smith_normal_form,
)
from .arrangements import (
    FiniteCosetProduct,
    IntersectionPoset,
    complement_count,
    finite_semilattice,
    graphic_semilattice,
    product_valuation,
)
from .config import GuardExceeded, VerificationError
from .fixtures import all_fixtures, fixture, fixture_names
from .graph import EdgeSubset, MultiGraph, Orientation, rank_nullity
from .graphio import ParseError, parse_graph_file, parse_graph_text
from .invariants import (
    chromatic_poly,
    exact_level_count,
    flow_poly,
    integral_flow_poly,
    integral_tension_poly,
    kappa_rho,
    omega,
    omega_value,
    pair_integral_identities,
    psi_family,
    reciprocity_check,
    specialization_check,
    tension_poly,
    tutte,
    tutte_value_triples,
    whitney,
    whitney_weighted_sums,
)
from .orientations import (
    OrientationClass,
    all_orientations,
    classify_edges,
    cut_eulerian_classes,
)
from .tensionflow import (
    FiniteAbelianGroup,
    GroupElementFunction,
    IntegerEdgeFunction,
    TensionFlowPair,
    count_pairs,
    enumerate_flows,
    enumerate_integral_flows,
    enumerate_integral_tensions,
    enumerate_tensions,
    is_flow,
    is_tension,
    lattice_index,
    modular_reduce,
    reorient,
)
from .verification import CheckResult, SUITES, run_criteria, run_suite

__version__ = "0.1.0"

__all__ = [
    "CheckResult",
    "EdgeSubset",
    "FiniteAbelianGroup",
    "FiniteCosetProduct",
    "GroupElementFunction",
    "GuardExceeded",
    "IntegerEdgeFunction",
    "InterpolationError",
    "IntersectionPoset",
    "IntMatrix",
    "MultiGraph",
    "MultiPoly",
    "Orientation",
    "OrientationClass",
    "ParseError",
    "RationalMatrix",
    "SUITES",
    "TensionFlowPair",
    "VerificationError",
    "all_fixtures",
    "all_orientations",
    "chromatic_poly",
    "classify_edges",
    "complement_count",
    "count_pairs",
    "cut_eulerian_classes",
    "enumerate_flows",
    "enumerate_integral_flows",
    "enumerate_integral_tensions",
    "enumerate_tensions",
    "exact_level_count",
    "finite_semilattice",
    "fixture",
    "fixture_names",
    "flow_poly",
    "graphic_semilattice",
    "integral_flow_poly",
    "integral_tension_poly",
    "interpolate_univariate",
    "is_flow",
    "is_tension",
    "kappa_rho",
    "lattice_index",
    "modular_reduce",
    "omega",
    "omega_value",
    "parse_graph_file",
    "parse_graph_text",
    "product_valuation",
    "psi_family",
    "rank_nullity",
    "rational_rank",
    "pair_integral_identities",
    "reciprocity_check",
    "reorient",
    "run_criteria",
    "run_suite",
    "smith_normal_form",
    "specialization_check",
    "tension_poly",
    "tutte",
    "tutte_value_triples",
    "whitney",
    "whitney_weighted_sums",
]
