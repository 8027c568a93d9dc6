"""Reversible cost metrics and backend comparison.

Five figures are reported per netlist (and per plane when gates carry a plane
tag): gate count, quantum cost (QC), constant inputs (CI), garbage outputs
(GO) and total logical calculation (T, an XOR/AND/NOT tally).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from .gates import GateKind, LogicCalc
from .netlist import Constant, GateInstance, GatePin, Netlist
from .pla import PlaSpec
from .synth import AND_PLANE, OR_PLANE, Backend, reference_and_plane, reference_or_plane, synthesize

GARBAGE_NOTE = (
    "{n} gate output(s) have no consumer; counting garbage as zero, as is customary "
    "for RPLA designs that reuse Feynman copies, would ignore the unused byproduct "
    "outputs of the AND/OR gates"
)


def _gates(net: Netlist, plane: Optional[str]) -> List[GateInstance]:
    if plane is None:
        return list(net.gates)
    return [g for g in net.gates if g.plane == plane]


def gate_counts(net: Netlist, plane: Optional[str] = None) -> Dict[GateKind, int]:
    counts = {kind: 0 for kind in GateKind}
    for g in _gates(net, plane):
        counts[g.spec.kind] += 1
    return counts


def quantum_cost(net: Netlist, plane: Optional[str] = None) -> int:
    return sum(g.spec.quantum_cost for g in _gates(net, plane))


def constant_inputs(net: Netlist, plane: Optional[str] = None) -> int:
    """Constant-driven lines consumed by gates (of ``plane``, if given)."""
    ids = {g.id for g in _gates(net, plane)}
    total = 0
    for lid in net.constant_lines:
        line = net.lines[lid]
        if isinstance(line.driver, Constant) and isinstance(line.consumer, GatePin) and line.consumer.gate in ids:
            total += 1
    return total


def garbage_outputs(net: Netlist, plane: Optional[str] = None) -> Tuple[int, str]:
    """Strict garbage count (gate outputs that are neither consumed nor primary) and a note."""
    strict = len(net.garbage_lines(_gates(net, plane)))
    return strict, GARBAGE_NOTE.format(n=strict) if strict else ""


def total_logical_calculation(net: Netlist, plane: Optional[str] = None) -> LogicCalc:
    total = LogicCalc()
    for g in _gates(net, plane):
        total = total + g.spec.logic_signature
    return total


@dataclass
class CostReport:
    gates_by_kind: Dict[GateKind, int]
    gate_total: int
    quantum_cost: int
    constant_inputs: int
    garbage_strict: int
    garbage_note: str
    logic_calc: LogicCalc
    planes: Dict[str, "CostReport"] = field(default_factory=dict)

    def to_dict(self) -> Dict[str, Any]:
        d: Dict[str, Any] = {
            "gates_by_kind": {k.value: v for k, v in self.gates_by_kind.items()},
            "gate_total": self.gate_total,
            "quantum_cost": self.quantum_cost,
            "constant_inputs": self.constant_inputs,
            "garbage_strict": self.garbage_strict,
            "garbage_note": self.garbage_note,
            "logic_calc": dict(zip(("alpha", "beta", "delta"), self.logic_calc.as_tuple())),
        }
        if self.planes:
            d["planes"] = {name: rep.to_dict() for name, rep in self.planes.items()}
        return d

    def to_text(self) -> str:
        header = ["metric", "total", *self.planes]
        reports = [self, *self.planes.values()]

        def line(label, fn):
            return [label, *(str(fn(r)) for r in reports)]

        body = [
            line("gates", lambda r: r.gate_total),
            *(line(f"  {k.value}", lambda r, k=k: r.gates_by_kind[k]) for k in GateKind),
            line("QC", lambda r: r.quantum_cost),
            line("CI", lambda r: r.constant_inputs),
            line("GO (strict)", lambda r: r.garbage_strict),
            line("T", lambda r: r.logic_calc),
        ]
        text = _align([header, *body])
        if self.garbage_note:
            text += "\nnote: " + self.garbage_note + "\n"
        return text


def _plane_report(net: Netlist, plane: Optional[str]) -> CostReport:
    counts = gate_counts(net, plane)
    strict, note = garbage_outputs(net, plane)
    return CostReport(
        gates_by_kind=counts,
        gate_total=sum(counts.values()),
        quantum_cost=quantum_cost(net, plane),
        constant_inputs=constant_inputs(net, plane),
        garbage_strict=strict,
        garbage_note=note,
        logic_calc=total_logical_calculation(net, plane),
    )


def cost_report(net: Netlist, by_plane: bool = True) -> CostReport:
    report = _plane_report(net, None)
    if by_plane:
        for plane in sorted({g.plane for g in net.gates if g.plane is not None}):
            report.planes[plane] = _plane_report(net, plane)
    return report


# -- comparison -------------------------------------------------------------

Metric = Union[int, LogicCalc]

METRICS: Tuple[Tuple[str, str], ...] = (
    ("gates", "gate_total"),
    ("QC", "quantum_cost"),
    ("CI", "constant_inputs"),
    ("GO (strict)", "garbage_strict"),
    ("T", "logic_calc"),
)


def _size(value: Metric) -> int:
    return value.total if isinstance(value, LogicCalc) else value


@dataclass
class ComparisonRow:
    section: str
    metric: str
    values: Tuple[Metric, ...]
    delta: Metric
    winner: str


@dataclass
class ComparisonTable:
    """Side-by-side metrics; ``delta`` is second backend minus first.

    With the default ordering (proposed MUX backend first) a positive delta
    means the first backend is cheaper.
    """

    backends: Tuple[str, ...]
    reports: Dict[str, Dict[str, CostReport]]
    rows: List[ComparisonRow]

    def row(self, section: str, metric: str) -> ComparisonRow:
        for r in self.rows:
            if r.section == section and r.metric == metric:
                return r
        raise KeyError((section, metric))

    def to_dict(self) -> Dict[str, Any]:
        def enc(v: Metric):
            return list(v.as_tuple()) if isinstance(v, LogicCalc) else v

        return {
            "backends": list(self.backends),
            "rows": [
                {
                    "section": r.section,
                    "metric": r.metric,
                    "values": dict(zip(self.backends, (enc(v) for v in r.values))),
                    "delta": enc(r.delta),
                    "winner": r.winner,
                }
                for r in self.rows
            ],
            "reports": {
                b: {section: rep.to_dict() for section, rep in by_section.items()}
                for b, by_section in self.reports.items()
            },
        }

    def to_text(self) -> str:
        table = [["plane", "metric", *self.backends, "delta", "winner"]]
        for r in self.rows:
            table.append([r.section, r.metric, *(str(v) for v in r.values), str(r.delta), r.winner])
        return _align(table)


def _align(table: Sequence[Sequence[str]]) -> str:
    widths = [max(len(row[i]) for row in table) for i in range(len(table[0]))]
    return "\n".join(
        "  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() for row in table
    ) + "\n"


def _sections(
    spec: Optional[PlaSpec], backend: Backend, full_plane: bool
) -> Dict[str, CostReport]:
    if spec is None:
        and_rep = cost_report(reference_and_plane(backend), by_plane=False)
        or_rep = cost_report(reference_or_plane(backend), by_plane=False)
        return {AND_PLANE: and_rep, OR_PLANE: or_rep}
    rep = cost_report(synthesize(spec, backend, full_plane))
    empty = _plane_report(Netlist(), None)
    return {
        AND_PLANE: rep.planes.get(AND_PLANE, empty),
        OR_PLANE: rep.planes.get(OR_PLANE, empty),
        "total": rep,
    }


def compare(
    spec: Optional[PlaSpec] = None,
    full_plane: bool = False,
    backends: Sequence[Union[Backend, str]] = (Backend.MUX_FEYNMAN, Backend.FREDKIN_FEYNMAN),
) -> ComparisonTable:
    """Cost both backends on the same specification.

    With ``spec=None`` the reference planes are compared: the full 3-input
    AND plane and a 4-minterm single-output OR plane.
    """
    if len(backends) != 2:
        raise ValueError("compare needs exactly two backends")
    chosen = [Backend(b) for b in backends]
    names = tuple(b.value for b in chosen)
    if names[0] == names[1]:
        names = (f"{names[0]}[0]", f"{names[1]}[1]")
    per_backend = [_sections(spec, b, full_plane) for b in chosen]
    rows = []
    for section in per_backend[0]:
        for label, attr in METRICS:
            first, second = (getattr(p[section], attr) for p in per_backend)
            delta = second - first
            if _size(first) < _size(second):
                winner = names[0]
            elif _size(second) < _size(first):
                winner = names[1]
            else:
                winner = "tie"
            rows.append(ComparisonRow(section, label, (first, second), delta, winner))
    return ComparisonTable(names, dict(zip(names, per_backend)), rows)
