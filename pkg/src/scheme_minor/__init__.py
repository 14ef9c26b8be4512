"""Schemes, rooted minors and the doubled graph M'(H) for small graphs."""

from .errors import (
    CapacityError,
    GraphValidationError,
    HypothesisViolation,
    InternalInvariantError,
    ParseError,
    PreconditionError,
    SchemeMinorError,
)
from .graph import Graph, ThetaSignature, theta_graph
from .graphio import from_graph6, graph_from_dict, graph_to_dict, parse_graph, serialize_graph, to_graph6
from .canon import canonical_form, are_isomorphic
from .minors import MinorModel, check_minor_model, find_minor, find_rooted_minor
from .scheme import ColoredScheme, HScheme, normalize_scheme, replay_trace, validate_colored_scheme, validate_hscheme
from .untangle import removable_reduction, untangle_cycle_scheme
from .mprime import (
    build_induced_model,
    build_mprime,
    decide_mprime_contractible,
    find_inducing_stable_set,
    find_shift_automorphism,
    verify_certificate,
)
from .classifier import Verdict, classify, detect_bad_theta, detect_two_long_odd
from .smallgraphs import enumerate_connected_graphs
from .atlas import verify_atlas_claims

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "GraphValidationError",
    "HypothesisViolation",
    "InternalInvariantError",
    "ParseError",
    "PreconditionError",
    "SchemeMinorError",
    "Graph",
    "ThetaSignature",
    "theta_graph",
    "from_graph6",
    "graph_from_dict",
    "graph_to_dict",
    "parse_graph",
    "serialize_graph",
    "to_graph6",
    "canonical_form",
    "are_isomorphic",
    "MinorModel",
    "check_minor_model",
    "find_minor",
    "find_rooted_minor",
    "ColoredScheme",
    "HScheme",
    "normalize_scheme",
    "replay_trace",
    "validate_colored_scheme",
    "validate_hscheme",
    "removable_reduction",
    "untangle_cycle_scheme",
    "build_induced_model",
    "build_mprime",
    "decide_mprime_contractible",
    "find_inducing_stable_set",
    "find_shift_automorphism",
    "verify_certificate",
    "Verdict",
    "classify",
    "detect_bad_theta",
    "detect_two_long_odd",
    "enumerate_connected_graphs",
    "verify_atlas_claims",
    "__version__",
]
