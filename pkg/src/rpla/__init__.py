"""Reversible programmable logic arrays from MUX/Feynman or Fredkin/Feynman gates."""

__version__ = "0.1.0"

from .cost import CostReport, compare, cost_report
from .gates import GateKind, GateRole, GateSpec, LogicCalc, build_gate, eval_gate, invert_gate
from .netlist import Netlist, new_netlist, topo_order, validate
from .pla import MintermCover, PlaSpec, expand_to_minterms, format_pla, parse_pla
from .serialize import deserialize_netlist, emit_dot, serialize_netlist
from .simulate import (
    check_circuit_bijective,
    check_equivalence,
    evaluate,
    inverse_evaluate,
    truth_table,
)
from .synth import Backend, synthesize


def __getattr__(name):
    # scikit-learn is slow to import; only pay for it when the estimator is used
    if name == "ReversiblePLA":
        from .estimator import ReversiblePLA

        return ReversiblePLA
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")

__all__ = [
    "Backend",
    "CostReport",
    "GateKind",
    "GateRole",
    "GateSpec",
    "LogicCalc",
    "MintermCover",
    "Netlist",
    "PlaSpec",
    "ReversiblePLA",
    "build_gate",
    "check_circuit_bijective",
    "check_equivalence",
    "compare",
    "cost_report",
    "deserialize_netlist",
    "emit_dot",
    "eval_gate",
    "evaluate",
    "expand_to_minterms",
    "format_pla",
    "invert_gate",
    "inverse_evaluate",
    "new_netlist",
    "parse_pla",
    "serialize_netlist",
    "synthesize",
    "topo_order",
    "truth_table",
    "validate",
]
