"""Genus of configuration curves of one-degree-of-freedom graphs via tropical geometry."""

__version__ = "0.1.0"

from .graph import (
    Graph,
    RigidDecomposition,
    CycleBasis,
    parse_graph,
    is_one_dof,
    pebble_game_rank,
    rigid_components,
    cycle_basis,
    shared_vertex_structure,
    enumerate_one_dof_graphs,
)
from .linear_model import assign_parameters, build_constraint_matrix
from .matroid import Matroid, column_matroid, dual, flats, uniform_matroid
from .tropical import (
    HFan,
    TropicalCurve,
    GenusReport,
    bergman_fan,
    reflect_translate,
    sample_translation,
    transversality_certificate,
    stable_intersection,
    check_balancing,
    check_smoothness,
    genus,
)
from .verify import run_pipeline, theorem_verdict, survey, conjecture_probe

__all__ = [
    "CycleBasis", "GenusReport", "Graph", "HFan", "Matroid", "RigidDecomposition", "TropicalCurve",
    "assign_parameters", "bergman_fan", "build_constraint_matrix", "check_balancing",
    "check_smoothness", "column_matroid", "conjecture_probe", "cycle_basis", "dual",
    "enumerate_one_dof_graphs", "flats", "genus", "is_one_dof", "parse_graph", "pebble_game_rank",
    "reflect_translate", "rigid_components", "run_pipeline", "sample_translation",
    "shared_vertex_structure", "stable_intersection", "survey", "theorem_verdict",
    "transversality_certificate", "uniform_matroid",
]
