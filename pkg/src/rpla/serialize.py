"""Netlist documents (JSON) and Graphviz DOT rendering."""
from __future__ import annotations

import json
from typing import Any, Dict, List

from .gates import GateKind, build_gate
from .netlist import (
    Constant,
    GateInstance,
    GatePin,
    Line,
    Netlist,
    PrimaryInput,
    PrimaryOutput,
)

FORMAT_NAME = "rpla-netlist"
FORMAT_VERSION = 1


class NetlistFormatError(ValueError):
    pass


def netlist_to_dict(net: Netlist) -> Dict[str, Any]:
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "name": net.name,
        "inputs": [
            {"line": lid, "label": label} for lid, label in zip(net.primary_inputs, net.input_labels)
        ],
        "constants": [
            {"line": lid, "bit": net.lines[lid].driver.bit} for lid in sorted(net.constant_lines)
        ],
        "gates": [
            {
                "id": g.id,
                "kind": g.spec.kind.value,
                "role": g.role,
                "plane": g.plane,
                "in": list(g.inputs),
                "out": list(g.outputs),
            }
            for g in sorted(net.gates, key=lambda g: g.id)
        ],
        "outputs": [
            {"index": j, "line": lid, "label": label}
            for j, (lid, label) in enumerate(zip(net.primary_outputs, net.output_labels))
        ],
    }


def serialize_netlist(net: Netlist) -> str:
    return json.dumps(netlist_to_dict(net), indent=2) + "\n"


def _need(doc: Dict[str, Any], key: str, kind: type) -> Any:
    if key not in doc:
        raise NetlistFormatError(f"missing field {key!r}")
    if not isinstance(doc[key], kind):
        raise NetlistFormatError(f"field {key!r} must be {kind.__name__}")
    return doc[key]


def netlist_from_dict(doc: Dict[str, Any]) -> Netlist:
    if not isinstance(doc, dict):
        raise NetlistFormatError("document must be an object")
    if doc.get("format") != FORMAT_NAME:
        raise NetlistFormatError(f"not an {FORMAT_NAME} document")
    if doc.get("version") != FORMAT_VERSION:
        raise NetlistFormatError(f"unsupported version {doc.get('version')!r}, expected {FORMAT_VERSION}")

    net = Netlist(name=str(doc.get("name", "netlist")))
    drivers: Dict[int, Any] = {}

    def drive(lid: Any, driver: Any) -> None:
        if not isinstance(lid, int) or isinstance(lid, bool) or lid < 0:
            raise NetlistFormatError(f"bad line id {lid!r}")
        if lid in drivers:
            raise NetlistFormatError(f"line {lid} has two drivers")
        drivers[lid] = driver

    try:
        for i, rec in enumerate(_need(doc, "inputs", list)):
            drive(rec["line"], PrimaryInput(i))
            net.primary_inputs.append(rec["line"])
            net.input_labels.append(str(rec.get("label", f"x{i}")))
        for rec in _need(doc, "constants", list):
            if rec["bit"] not in (0, 1):
                raise NetlistFormatError(f"constant line {rec['line']} has bit {rec['bit']!r}")
            drive(rec["line"], Constant(rec["bit"]))
            net.constant_lines.append(rec["line"])
        for rec in _need(doc, "gates", list):
            try:
                spec = build_gate(GateKind(rec["kind"]))
            except ValueError:
                raise NetlistFormatError(f"gate {rec.get('id')}: unknown kind {rec['kind']!r}") from None
            gate = GateInstance(
                int(rec["id"]), spec, tuple(rec["in"]), tuple(rec["out"]), str(rec.get("role", "raw")), rec.get("plane")
            )
            for pin, lid in enumerate(gate.outputs):
                drive(lid, GatePin(gate.id, pin))
            net.gates.append(gate)
        outputs = sorted(_need(doc, "outputs", list), key=lambda r: r["index"])
        if [r["index"] for r in outputs] != list(range(len(outputs))):
            raise NetlistFormatError("output indices must be 0..m-1")
        for rec in outputs:
            net.primary_outputs.append(rec["line"])
            net.output_labels.append(str(rec.get("label", f"y{rec['index']}")))
    except (KeyError, TypeError) as exc:
        raise NetlistFormatError(f"malformed record: {exc}") from None

    for lid in sorted(drivers):
        net.lines[lid] = Line(lid, drivers[lid])

    def consume(lid: Any, consumer: Any, where: str) -> None:
        if lid not in net.lines:
            raise NetlistFormatError(f"{where} references unknown line {lid!r}")
        line = net.lines[lid]
        if line.consumer is None:
            line.consumer = consumer
        # a second consumer is left for validate() to report as fan-out

    for g in net.gates:
        for pin, lid in enumerate(g.inputs):
            consume(lid, GatePin(g.id, pin), f"gate {g.id}")
    for j, lid in enumerate(net.primary_outputs):
        consume(lid, PrimaryOutput(j), f"output {j}")
    return net


def deserialize_netlist(text: str) -> Netlist:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetlistFormatError(f"invalid JSON: {exc}") from None
    return netlist_from_dict(doc)


def _quote(s: str) -> str:
    return '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'


def emit_dot(net: Netlist) -> str:
    """Render the netlist as a left-to-right DOT digraph.

    One node per primary input, constant line, gate and primary output, plus a
    single ``unconsumed`` sink collecting every line without a consumer.
    There is exactly one edge per line.
    """
    out: List[str] = [f"digraph {_quote(net.name)} {{", "  rankdir=LR;"]
    for i, lid in enumerate(net.primary_inputs):
        out.append(f'  in{i} [label={_quote(net.input_labels[i])}, shape=circle];')
    for lid in sorted(net.constant_lines):
        out.append(f'  c{lid} [label="{net.lines[lid].driver.bit}", shape=plaintext];')
    for g in sorted(net.gates, key=lambda g: g.id):
        label = f"{g.spec.kind.value}\\n{g.role}"
        out.append(f"  g{g.id} [label={_quote(label)}, shape=box];")
    for j, lid in enumerate(net.primary_outputs):
        out.append(f'  out{j} [label={_quote(net.output_labels[j])}, shape=doublecircle];')
    unconsumed = net.unconsumed_lines()
    if unconsumed:
        out.append('  unconsumed [label="unconsumed", shape=point];')

    pins = "PQR"
    for lid in sorted(net.lines):
        line = net.lines[lid]
        d = line.driver
        if isinstance(d, PrimaryInput):
            src = f"in{d.index}"
        elif isinstance(d, Constant):
            src = f"c{lid}"
        else:
            src = f"g{d.gate}"
        c = line.consumer
        if isinstance(c, GatePin):
            dst = f"g{c.gate}"
        elif isinstance(c, PrimaryOutput):
            dst = f"out{c.index}"
        else:
            dst = "unconsumed"
        attrs = [f"label={_quote(f'l{lid}')}"]
        if isinstance(d, GatePin):
            attrs.append(f'taillabel="{pins[d.pin]}"')
        if isinstance(c, GatePin):
            attrs.append(f'headlabel="{"ABC"[c.pin]}"')
        out.append(f"  {src} -> {dst} [{', '.join(attrs)}];")
    out.append("}")
    return "\n".join(out) + "\n"
