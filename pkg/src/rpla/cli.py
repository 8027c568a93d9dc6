"""Command-line interface.

Exit codes: 0 success, 1 verification failure, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import List, Optional, Sequence

from . import __version__
from .cost import compare, cost_report
from .netlist import validate
from .pla import PlaParseError, expand_to_minterms, parse_pla
from .serialize import NetlistFormatError, deserialize_netlist, emit_dot, serialize_netlist
from .simulate import (
    EnumerationCapExceeded,
    InvalidNetlist,
    check_circuit_bijective,
    check_equivalence,
    evaluate,
    truth_table,
)
from .synth import Backend, SynthesisError, synthesize

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _write(text: str, path: Optional[str]) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _load_netlist(path: str):
    net = deserialize_netlist(_read(path))
    diags = validate(net)
    if diags:
        raise InvalidNetlist(diags)
    return net


def cmd_synth(args) -> int:
    spec = parse_pla(_read(args.pla))
    net = synthesize(spec, Backend(args.backend), args.full_plane)
    doc = serialize_netlist(net)
    _write(doc, args.output)
    if args.output not in (None, "-"):
        summary = {"output": args.output, "gates": len(net.gates), "inputs": net.n_inputs, "outputs": net.n_outputs}
        if args.json:
            sys.stdout.write(_dump(summary))
        else:
            print(f"wrote {args.output}: {len(net.gates)} gates, {net.n_inputs} inputs, {net.n_outputs} outputs")
    return EXIT_OK


def _bits(text: str, n: int) -> List[int]:
    if len(text) != n or set(text) - set("01"):
        raise UsageError(f"--input must be {n} characters of 0/1, got {text!r}")
    return [int(ch) for ch in text]


def cmd_sim(args) -> int:
    net = _load_netlist(args.netlist)
    if args.input is not None:
        values = evaluate(net, _bits(args.input, net.n_inputs))
        out = "".join(str(values[lid]) for lid in net.primary_outputs)
        if args.json:
            sys.stdout.write(_dump({"input": args.input, "output": out}))
        else:
            print(out)
        return EXIT_OK
    table = truth_table(net)
    rows = [
        (format(v, f"0{net.n_inputs}b"), "".join(map(str, row))) for v, row in enumerate(table.rows)
    ]
    if args.json:
        sys.stdout.write(_dump({"inputs": net.input_labels, "outputs": net.output_labels,
                                "rows": [{"input": a, "output": b} for a, b in rows]}))
    else:
        print(" ".join(net.input_labels) + " | " + " ".join(net.output_labels))
        for a, b in rows:
            print(f"{a} {b}")
    return EXIT_OK


def cmd_verify(args) -> int:
    net = deserialize_netlist(_read(args.netlist))
    spec = parse_pla(_read(args.against))
    result = {"valid": True, "equivalent": None, "bijective": None, "mismatch": None, "diagnostics": []}
    diags = validate(net)
    if diags:
        result["valid"] = False
        result["diagnostics"] = [f"{d.kind}: {d.message}" for d in diags]
    else:
        cover = expand_to_minterms(spec)
        if (cover.n, cover.m) != (net.n_inputs, net.n_outputs):
            result["equivalent"] = False
            result["diagnostics"] = [
                f"arity mismatch: netlist {net.n_inputs}->{net.n_outputs}, spec {cover.n}->{cover.m}"
            ]
        else:
            eq = check_equivalence(net, cover)
            result["equivalent"] = eq.ok
            if not eq.ok:
                x, got, want = eq.mismatch
                result["mismatch"] = {
                    "input": "".join(map(str, x)),
                    "got": "".join(map(str, got)),
                    "expected": "".join(map(str, want)),
                }
            bij = check_circuit_bijective(net)
            result["bijective"] = {"ok": bij.ok, "mode": bij.mode, "vectors": bij.vectors}
    ok = bool(result["valid"] and result["equivalent"] and result["bijective"] and result["bijective"]["ok"])
    if args.json:
        sys.stdout.write(_dump(result))
    else:
        for d in result["diagnostics"]:
            print(d, file=sys.stderr)
        if result["mismatch"]:
            m = result["mismatch"]
            print(f"MISMATCH input={m['input']} got={m['got']} expected={m['expected']}")
        if result["bijective"]:
            b = result["bijective"]
            print(f"bijective: {'yes' if b['ok'] else 'NO'} ({b['mode']}, {b['vectors']} vectors)")
        print("PASS" if ok else "FAIL")
    return EXIT_OK if ok else EXIT_FAIL


def cmd_cost(args) -> int:
    report = cost_report(_load_netlist(args.netlist))
    sys.stdout.write(_dump(report.to_dict()) if args.json else report.to_text())
    return EXIT_OK


def cmd_compare(args) -> int:
    spec = parse_pla(_read(args.pla)) if args.pla else None
    table = compare(spec, full_plane=args.full_plane)
    sys.stdout.write(_dump(table.to_dict()) if args.json else table.to_text())
    return EXIT_OK


def cmd_emit(args) -> int:
    net = _load_netlist(args.netlist)
    text = emit_dot(net) if args.format == "dot" else serialize_netlist(net)
    _write(text, args.output)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")

    parser = argparse.ArgumentParser(prog="rpla", description="Reversible PLA synthesis and costing")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("synth", parents=[common], help="synthesise a .pla file into a netlist")
    p.add_argument("pla")
    p.add_argument("--backend", choices=[b.value for b in Backend], default=Backend.MUX_FEYNMAN.value)
    p.add_argument("--full-plane", action="store_true", help="build every minterm of the AND plane")
    p.add_argument("-o", "--output", help="netlist document path (default: stdout)")
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("sim", parents=[common], help="simulate a netlist")
    p.add_argument("netlist")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--input", help="one input vector, e.g. 101")
    g.add_argument("--table", action="store_true", help="full truth table (default)")
    p.set_defaults(func=cmd_sim)

    p = sub.add_parser("verify", parents=[common], help="check a netlist against a .pla file")
    p.add_argument("netlist")
    p.add_argument("--against", required=True, metavar="PLA")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("cost", parents=[common], help="report cost metrics of a netlist")
    p.add_argument("netlist")
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("compare", parents=[common], help="compare both backends")
    p.add_argument("pla", nargs="?", help="omit to compare the reference planes")
    p.add_argument("--full-plane", action="store_true")
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("emit", parents=[common], help="render a netlist")
    p.add_argument("netlist")
    p.add_argument("--format", choices=["dot", "json"], default="dot")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_emit)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (
        UsageError,
        PlaParseError,
        NetlistFormatError,
        InvalidNetlist,
        EnumerationCapExceeded,
        SynthesisError,
    ) as exc:
        print(f"rpla {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


run_cli = main

if __name__ == "__main__":
    sys.exit(main())
