"""Reversible netlists: gates wired by single-driver, single-consumer lines.

The builder enforces the no-fan-out rule as gates are added; :func:`validate`
re-derives every invariant from the gate records alone, so netlists loaded
from a document (or corrupted by hand) are checked the same way.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Tuple, Union

from .gates import GateRole, GateSpec


class NetlistError(Exception):
    """Base class for structural netlist errors."""


class FanOutViolation(NetlistError):
    pass


class FeedbackViolation(NetlistError):
    pass


class UnknownLineError(NetlistError, KeyError):
    def __str__(self) -> str:
        return Exception.__str__(self)


@dataclass(frozen=True)
class PrimaryInput:
    index: int


@dataclass(frozen=True)
class Constant:
    bit: int


@dataclass(frozen=True)
class GatePin:
    gate: int
    pin: int


@dataclass(frozen=True)
class PrimaryOutput:
    index: int


Driver = Union[PrimaryInput, Constant, GatePin]
Consumer = Union[GatePin, PrimaryOutput, None]


@dataclass
class Line:
    id: int
    driver: Driver
    consumer: Consumer = None


@dataclass
class GateInstance:
    id: int
    spec: GateSpec
    inputs: Tuple[int, ...]
    outputs: Tuple[int, ...]
    role: str = "raw"
    plane: Optional[str] = None


class Diagnostic(NamedTuple):
    kind: str
    ids: Tuple[int, ...]
    message: str


@dataclass
class Netlist:
    name: str = "netlist"
    lines: Dict[int, Line] = field(default_factory=dict)
    gates: List[GateInstance] = field(default_factory=list)
    primary_inputs: List[int] = field(default_factory=list)
    constant_lines: List[int] = field(default_factory=list)
    primary_outputs: List[int] = field(default_factory=list)
    input_labels: List[str] = field(default_factory=list)
    output_labels: List[str] = field(default_factory=list)

    # -- builder -----------------------------------------------------------

    def _new_line(self, driver: Driver) -> int:
        lid = len(self.lines)
        if lid in self.lines:
            lid = max(self.lines) + 1
        self.lines[lid] = Line(lid, driver)
        return lid

    def add_input(self, label: Optional[str] = None) -> int:
        index = len(self.primary_inputs)
        lid = self._new_line(PrimaryInput(index))
        self.primary_inputs.append(lid)
        self.input_labels.append(label if label is not None else f"x{index}")
        return lid

    def add_constant(self, bit: int) -> int:
        if bit not in (0, 1):
            raise ValueError(f"constant must be 0 or 1, got {bit!r}")
        lid = self._new_line(Constant(bit))
        self.constant_lines.append(lid)
        return lid

    def line(self, lid: int) -> Line:
        try:
            return self.lines[lid]
        except KeyError:
            raise UnknownLineError(f"unknown line id {lid}") from None

    def _claim(self, lid: int, consumer: Consumer) -> None:
        line = self.line(lid)
        if line.consumer is not None:
            raise FanOutViolation(
                f"line {lid} already feeds {line.consumer}; copy it with a Feynman gate"
            )
        line.consumer = consumer

    def add_gate(
        self,
        spec: GateSpec,
        inputs: Sequence[int],
        role: str = "raw",
        plane: Optional[str] = None,
    ) -> Tuple[int, ...]:
        """Append a gate consuming ``inputs`` and return its fresh output lines."""
        inputs = tuple(inputs)
        if len(inputs) != spec.width:
            raise ValueError(f"{spec.kind.value} gate needs {spec.width} inputs, got {len(inputs)}")
        if len(set(inputs)) != len(inputs):
            raise FanOutViolation(f"gate inputs repeat a line: {inputs}")
        for lid in inputs:
            line = self.line(lid)
            if line.consumer is not None:
                raise FanOutViolation(f"line {lid} already feeds {line.consumer}")
        gid = len(self.gates)
        if self.gates and self.gates[-1].id >= gid:
            gid = max(g.id for g in self.gates) + 1
        for pin, lid in enumerate(inputs):
            self._claim(lid, GatePin(gid, pin))
        outputs = tuple(self._new_line(GatePin(gid, pin)) for pin in range(spec.width))
        self.gates.append(GateInstance(gid, spec, inputs, outputs, str(role), plane))
        return outputs

    def add_role(
        self, role: GateRole, free_inputs: Sequence[int], plane: Optional[str] = None
    ) -> Tuple[int, ...]:
        """Add ``role``'s gate with fresh constant lines on its fixed pins.

        Returns all output lines of the gate (not only the functional ones).
        """
        if len(free_inputs) != len(role.free_pins):
            raise ValueError(
                f"{role.name.value} role takes {len(role.free_pins)} free inputs, got {len(free_inputs)}"
            )
        for lid in free_inputs:
            self.line(lid)
        wires: Dict[int, int] = dict(zip(role.free_pins, free_inputs))
        for pin, bit in role.constant_pins:
            wires[pin] = self.add_constant(bit)
        return self.add_gate(
            role.spec, [wires[p] for p in range(role.spec.width)], role.name.value, plane
        )

    def mark_output(self, lid: int, index: Optional[int] = None, label: Optional[str] = None) -> int:
        if index is None:
            index = len(self.primary_outputs)
        if index != len(self.primary_outputs):
            raise ValueError(f"outputs must be marked in order; next index is {len(self.primary_outputs)}")
        self._claim(lid, PrimaryOutput(index))
        self.primary_outputs.append(lid)
        self.output_labels.append(label if label is not None else f"y{index}")
        return index

    # -- queries -----------------------------------------------------------

    @property
    def n_inputs(self) -> int:
        return len(self.primary_inputs)

    @property
    def n_outputs(self) -> int:
        return len(self.primary_outputs)

    def gate(self, gid: int) -> GateInstance:
        for g in self.gates:
            if g.id == gid:
                return g
        raise KeyError(f"unknown gate id {gid}")

    def unconsumed_lines(self) -> List[int]:
        return sorted(lid for lid, line in self.lines.items() if line.consumer is None)

    def garbage_lines(self, gates: Optional[Iterable[GateInstance]] = None) -> List[int]:
        """Gate outputs with no consumer, optionally restricted to ``gates``."""
        pool = self.gates if gates is None else gates
        return sorted(
            lid for g in pool for lid in g.outputs if self.lines[lid].consumer is None
        )


def new_netlist(n_inputs: int, name: str = "netlist", labels: Optional[Sequence[str]] = None) -> Netlist:
    net = Netlist(name=name)
    for i in range(n_inputs):
        net.add_input(labels[i] if labels else None)
    return net


def _dependencies(net: Netlist) -> Dict[int, set]:
    """Map gate id -> ids of gates driving at least one of its inputs."""
    deps: Dict[int, set] = {g.id: set() for g in net.gates}
    for g in net.gates:
        for lid in g.inputs:
            line = net.lines.get(lid)
            if line is not None and isinstance(line.driver, GatePin) and line.driver.gate in deps:
                deps[g.id].add(line.driver.gate)
    return deps


def _kahn(net: Netlist) -> Tuple[List[int], List[int]]:
    deps = _dependencies(net)
    users: Dict[int, List[int]] = {gid: [] for gid in deps}
    pending = {gid: len(d) for gid, d in deps.items()}
    for gid, d in deps.items():
        for src in d:
            users[src].append(gid)
    ready = [gid for gid, k in pending.items() if k == 0]
    heapq.heapify(ready)
    order: List[int] = []
    while ready:
        gid = heapq.heappop(ready)
        order.append(gid)
        for nxt in users[gid]:
            pending[nxt] -= 1
            if pending[nxt] == 0:
                heapq.heappush(ready, nxt)
    stuck = sorted(gid for gid, k in pending.items() if k > 0)
    return order, stuck


def topo_order(net: Netlist) -> List[int]:
    """Gate ids in dependency order, ties broken by ascending id."""
    order, stuck = _kahn(net)
    if stuck:
        raise FeedbackViolation(f"gates {stuck} lie on a feedback cycle")
    return order


def validate(net: Netlist) -> List[Diagnostic]:
    """Check every structural invariant; return one diagnostic per violation."""
    diags: List[Diagnostic] = []

    def report(kind: str, ids: Iterable[int], message: str) -> None:
        diags.append(Diagnostic(kind, tuple(ids), message))

    drivers: Dict[int, List[str]] = {}
    consumers: Dict[int, List[str]] = {}

    def referenced(lid: int, where: str) -> bool:
        if lid not in net.lines:
            report("UnknownLine", (lid,), f"{where} references unknown line {lid}")
            return False
        return True

    for i, lid in enumerate(net.primary_inputs):
        if referenced(lid, f"primary input {i}"):
            drivers.setdefault(lid, []).append(f"input {i}")
    for lid in net.constant_lines:
        if referenced(lid, "constant list"):
            drivers.setdefault(lid, []).append("constant")
            if not isinstance(net.lines[lid].driver, Constant):
                report("DriverMismatch", (lid,), f"line {lid} listed as constant but driven by {net.lines[lid].driver}")

    seen_gate_ids = set()
    for g in net.gates:
        if g.id in seen_gate_ids:
            report("DuplicateGate", (g.id,), f"gate id {g.id} used twice")
        seen_gate_ids.add(g.id)
        if len(g.inputs) != g.spec.width or len(g.outputs) != g.spec.width:
            report(
                "WidthMismatch",
                (g.id,),
                f"gate {g.id} ({g.spec.kind.value}) has {len(g.inputs)} in / {len(g.outputs)} out, width {g.spec.width}",
            )
        for pin, lid in enumerate(g.inputs):
            if referenced(lid, f"gate {g.id}"):
                consumers.setdefault(lid, []).append(f"gate {g.id}")
        for pin, lid in enumerate(g.outputs):
            if referenced(lid, f"gate {g.id}"):
                drivers.setdefault(lid, []).append(f"gate {g.id}")
                if net.lines[lid].driver != GatePin(g.id, pin):
                    report("DriverMismatch", (lid, g.id), f"line {lid} not recorded as driven by gate {g.id} pin {pin}")

    for j, lid in enumerate(net.primary_outputs):
        if referenced(lid, f"primary output {j}"):
            consumers.setdefault(lid, []).append(f"output {j}")

    for lid, who in sorted(drivers.items()):
        if len(who) > 1:
            report("MultipleDrivers", (lid,), f"line {lid} driven by {', '.join(who)}")
    for lid in sorted(net.lines):
        if lid not in drivers:
            report("Undriven", (lid,), f"line {lid} has no driver")
    for lid, who in sorted(consumers.items()):
        if len(who) > 1:
            report("FanOutViolation", (lid,), f"line {lid} consumed by {', '.join(who)}")

    _, stuck = _kahn(net)
    if stuck:
        report("FeedbackViolation", stuck, f"gates {stuck} lie on a feedback cycle")
    return diags
