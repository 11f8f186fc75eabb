"""Kernelization and exact solving for trivially perfect editing, deletion and completion."""

from .comb import Comb, build_comb_small_antimatching, canonical_comb, comb_from_ucd_path, enumerate_reducible_combs, validate_comb
from .decomposition import CriticalCliquePartition, ModuleList, ModuleNode, critical_cliques, is_module, strong_modules, trivially_perfect_modules
from .generate import GenSpec, PlantedInstance, gen_tp_graph, plant_instance
from .graph import EditSet, Graph, InvalidInputError, apply_edits, parse_edge_list, read_edge_list
from .kernel import (
    MODES,
    AuditReport,
    Instance,
    ReductionTrace,
    audit_bounds,
    reduce_exhaustively,
    rule1_remove_tp_components,
    rule2_trim_critical_cliques,
    rule3_antimatching_module,
    rule4_shaft,
    rule5_teeth,
)
from .matching import AntiMatching, Matching, Packing, build_packing, max_anti_matching, maximum_matching
from .recognition import UCD, Obstruction, build_ucd, find_obstruction, is_trivially_perfect, tp_characterization_check, validate_ucd
from .solver import SolveResult, blow_up, solve, solve_bruteforce

__all__ = [
    "MODES",
    "UCD",
    "AntiMatching",
    "AuditReport",
    "Comb",
    "CriticalCliquePartition",
    "EditSet",
    "GenSpec",
    "Graph",
    "Instance",
    "InvalidInputError",
    "Matching",
    "ModuleList",
    "ModuleNode",
    "Obstruction",
    "Packing",
    "PlantedInstance",
    "ReductionTrace",
    "SolveResult",
    "apply_edits",
    "audit_bounds",
    "blow_up",
    "build_comb_small_antimatching",
    "build_packing",
    "build_ucd",
    "canonical_comb",
    "comb_from_ucd_path",
    "critical_cliques",
    "enumerate_reducible_combs",
    "find_obstruction",
    "gen_tp_graph",
    "is_module",
    "is_trivially_perfect",
    "max_anti_matching",
    "maximum_matching",
    "parse_edge_list",
    "plant_instance",
    "read_edge_list",
    "reduce_exhaustively",
    "rule1_remove_tp_components",
    "rule2_trim_critical_cliques",
    "rule3_antimatching_module",
    "rule4_shaft",
    "rule5_teeth",
    "solve",
    "solve_bruteforce",
    "strong_modules",
    "tp_characterization_check",
    "trivially_perfect_modules",
    "validate_comb",
    "validate_ucd",
]
