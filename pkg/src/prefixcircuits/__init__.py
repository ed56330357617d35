"""Parallel prefix circuits: generators, validation, metrics, and a
reversible carry-lookahead adder derived from the blocked zero-deficiency
family."""

from .classic import brent_kung, kogge_stone, ladner_fischer, serial, sklansky
from .core import (
    GATE,
    INPUT,
    CircuitMetrics,
    CircuitStructureError,
    GateNode,
    PrefixCircuit,
    WireRef,
    evaluate,
    fib_depth_lower_bound,
    metrics,
    snir_gap,
    validate_prefix,
)
from .kronalg import (
    HStats,
    brent_kung_kron_step,
    build,
    decomposition_check,
    h_stats,
    kron,
    mat_s,
    prefix_via_kron,
    vec,
)
from .kronecker import (
    DepthTable,
    KroneckerPlan,
    circuit_depth,
    depth_ratio_report,
    edge_predicate,
    is_power_of,
    kronecker_circuit,
    kronecker_depth,
    kronecker_depth_bound,
    kronecker_plan,
    level_edges,
    min_depth_table,
)
from .qadder import (
    AdderCheckReport,
    AdderResources,
    QuantumCircuit,
    build_adder,
    estimate_resources,
    netlist,
    resource_report,
    resources,
    simulate,
    verify_adder,
)
from .serialization import SchemaError, export_dot, export_json, import_json

__version__ = "0.1.0"

__all__ = [
    "AdderCheckReport",
    "AdderResources",
    "CircuitMetrics",
    "CircuitStructureError",
    "DepthTable",
    "GATE",
    "GateNode",
    "HStats",
    "INPUT",
    "KroneckerPlan",
    "PrefixCircuit",
    "QuantumCircuit",
    "SchemaError",
    "WireRef",
    "brent_kung",
    "brent_kung_kron_step",
    "build",
    "build_adder",
    "circuit_depth",
    "decomposition_check",
    "depth_ratio_report",
    "edge_predicate",
    "estimate_resources",
    "evaluate",
    "export_dot",
    "export_json",
    "fib_depth_lower_bound",
    "h_stats",
    "import_json",
    "is_power_of",
    "kogge_stone",
    "kron",
    "kronecker_circuit",
    "kronecker_depth",
    "kronecker_depth_bound",
    "kronecker_plan",
    "ladner_fischer",
    "level_edges",
    "mat_s",
    "metrics",
    "min_depth_table",
    "netlist",
    "prefix_via_kron",
    "resource_report",
    "resources",
    "serial",
    "simulate",
    "sklansky",
    "snir_gap",
    "validate_prefix",
    "vec",
    "verify_adder",
]
