"""Bundled crossings of pseudosegment drawings via rectangulations of the dual net."""

from .arrangement import (
    Arrangement,
    Crossing,
    InstanceError,
    StringCurve,
    build_planarization,
    ground,
    parse_instance,
    split_components,
    validate_pseudosegments,
)
from .bipartite import bipartite_pipeline, build_gain_graph, gain_def, gain_formula, max_gain_set
from .generators import GeneratorSpec, generate
from .harness import run_bundling, run_harness
from .net import DualNet, build_net, detect_toothed_holes, net_from_arrangement
from .oracle import brute_force_min_rectangulation, ortho_exact, verify_inequalities
from .rectangulation import (
    build_gamma,
    extract_rectangulation,
    gamma_checks,
    greedy_rectangulate,
    to_bundling,
)

__all__ = [
    "Arrangement", "Crossing", "InstanceError", "StringCurve", "build_planarization", "ground",
    "parse_instance", "split_components", "validate_pseudosegments", "bipartite_pipeline",
    "build_gain_graph", "gain_def", "gain_formula", "max_gain_set", "GeneratorSpec", "generate",
    "run_bundling", "run_harness", "DualNet", "build_net", "detect_toothed_holes",
    "net_from_arrangement", "brute_force_min_rectangulation", "ortho_exact", "verify_inequalities",
    "build_gamma", "extract_rectangulation", "gamma_checks", "greedy_rectangulate", "to_bundling",
]
