"""Reversible PLA construction: literal supply, AND plane, OR plane.

A specification is expanded to minterms and realised in three stages:

1. *literal supply*: a NOT-role Feynman gate per complemented input plus
   chains of copier-role Feynman gates, so every consumer gets its own line;
2. *AND plane*: each minterm is a left-associative chain of ``n - 1``
   two-input AND roles over its literals in input order;
3. *OR plane*: minterms feeding several outputs are copied, then each output
   is a left-associative chain of OR roles over its minterms.

The two backends differ only in which 3x3 gate plays AND and OR.
"""
from __future__ import annotations

from enum import Enum
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

from .gates import COPIER, FREDKIN_AND, FREDKIN_OR, MUX_AND, MUX_OR, NOT, GateRole
from .netlist import Netlist, new_netlist, validate
from .pla import MintermCover, PlaSpec, expand_to_minterms

Literal = Tuple[int, int]  # (input index, polarity); polarity 0 is the complement

AND_PLANE = "and"
OR_PLANE = "or"
MAX_SYNTH_INPUTS = 16


class Backend(str, Enum):
    MUX_FEYNMAN = "mux"
    FREDKIN_FEYNMAN = "fredkin"

    @property
    def and_role(self) -> GateRole:
        return MUX_AND if self is Backend.MUX_FEYNMAN else FREDKIN_AND

    @property
    def or_role(self) -> GateRole:
        return MUX_OR if self is Backend.MUX_FEYNMAN else FREDKIN_OR


class SynthesisError(RuntimeError):
    pass


def minterm_literals(minterm: int, n: int) -> List[Literal]:
    return [(i, (minterm >> (n - 1 - i)) & 1) for i in range(n)]


def literal_demand(minterms: Iterable[int], n: int) -> Dict[Literal, int]:
    """How many AND-plane consumers each literal needs (one per minterm using it)."""
    demand = {(i, pol): 0 for i in range(n) for pol in (1, 0)}
    for v in minterms:
        for lit in minterm_literals(v, n):
            demand[lit] += 1
    return demand


def copy_chain(net: Netlist, source: int, count: int, plane: Optional[str] = None) -> List[int]:
    """Turn one line into ``count`` independent copies with ``count - 1`` copiers.

    Each copier passes its input through on P and emits a copy on Q; the chain
    continues from P.  Returns ``[Q1, ..., Q(count-1), P_last]``.
    """
    if count <= 0:
        return []
    copies = []
    src = source
    for _ in range(count - 1):
        p, q = net.add_role(COPIER, (src,), plane)
        copies.append(q)
        src = p
    copies.append(src)
    return copies


def build_literal_supply(
    net: Netlist, n: int, demand: Mapping[Literal, int], plane: Optional[str] = AND_PLANE
) -> Dict[Literal, List[int]]:
    supply: Dict[Literal, List[int]] = {}
    for i in range(n):
        positive = net.primary_inputs[i]
        negative = None
        if demand.get((i, 0), 0) > 0:
            positive, negative = net.add_role(NOT, (positive,), plane)
        if demand.get((i, 1), 0) > 0:
            supply[(i, 1)] = copy_chain(net, positive, demand[(i, 1)], plane)
        if negative is not None:
            supply[(i, 0)] = copy_chain(net, negative, demand[(i, 0)], plane)
    return supply


def fold_chain(net: Netlist, role: GateRole, lines: Sequence[int], plane: Optional[str]) -> int:
    """Fold ``lines`` left to right through two-input ``role`` gates; return the result line."""
    acc = lines[0]
    out_pin = role.functional_outputs[0]
    for nxt in lines[1:]:
        acc = net.add_role(role, (acc, nxt), plane)[out_pin]
    return acc


def build_and_plane(
    net: Netlist,
    minterms: Iterable[int],
    n: int,
    backend: Backend,
    supply: Dict[Literal, List[int]],
    plane: Optional[str] = AND_PLANE,
) -> Dict[int, int]:
    """Realise each minterm as an AND chain; returns minterm -> result line.

    Literal lines are drawn from ``supply`` in order and removed from it.
    """
    backend = Backend(backend)
    lines: Dict[int, int] = {}
    for v in sorted(set(minterms)):
        literals = [supply[lit].pop(0) for lit in minterm_literals(v, n)]
        lines[v] = fold_chain(net, backend.and_role, literals, plane)
    return lines


def build_or_plane(
    net: Netlist,
    cover: MintermCover,
    minterm_lines: Mapping[int, int],
    backend: Backend,
    plane: Optional[str] = OR_PLANE,
    labels: Optional[Sequence[str]] = None,
) -> List[int]:
    """Combine minterm lines into one primary output per cover output."""
    backend = Backend(backend)
    uses: Dict[int, int] = {}
    for s in cover.outputs:
        for v in s:
            uses[v] = uses.get(v, 0) + 1
    pool: Dict[int, List[int]] = {}
    for v in sorted(uses):
        if v not in minterm_lines:
            raise SynthesisError(f"no line for minterm {v}")
        pool[v] = copy_chain(net, minterm_lines[v], uses[v], plane)

    outputs = []
    for j, s in enumerate(cover.outputs):
        terms = [pool[v].pop(0) for v in sorted(s)]
        if terms:
            line = fold_chain(net, backend.or_role, terms, plane)
        else:
            line = net.add_constant(0)
        net.mark_output(line, label=labels[j] if labels else None)
        outputs.append(line)
    return outputs


def synthesize_cover(
    cover: MintermCover,
    backend: Backend = Backend.MUX_FEYNMAN,
    full_plane: bool = False,
    input_labels: Optional[Sequence[str]] = None,
    output_labels: Optional[Sequence[str]] = None,
    name: Optional[str] = None,
) -> Netlist:
    backend = Backend(backend)
    n = cover.n
    if n > MAX_SYNTH_INPUTS:
        raise SynthesisError(f"{n} inputs exceeds the synthesis limit of {MAX_SYNTH_INPUTS}")
    net = new_netlist(n, name=name or f"rpla-{backend.value}", labels=input_labels)
    needed = list(range(1 << n)) if full_plane else cover.minterms
    supply = build_literal_supply(net, n, literal_demand(needed, n))
    minterm_lines = build_and_plane(net, needed, n, backend, supply)
    build_or_plane(net, cover, minterm_lines, backend, labels=output_labels)
    diags = validate(net)
    if diags:
        raise SynthesisError("synthesised netlist is invalid: " + "; ".join(d.message for d in diags))
    return net


def synthesize(spec: PlaSpec, backend: Backend = Backend.MUX_FEYNMAN, full_plane: bool = False) -> Netlist:
    """Build the reversible PLA for ``spec``.

    By default only minterms used by some output get an AND chain.  With
    ``full_plane=True`` all ``2^n`` minterms are built, giving the fixed
    universal AND fabric (37 gates for three inputs).
    """
    return synthesize_cover(
        expand_to_minterms(spec),
        backend,
        full_plane,
        input_labels=spec.input_names,
        output_labels=spec.output_names,
    )


def reference_and_plane(backend: Backend = Backend.MUX_FEYNMAN, n: int = 3) -> Netlist:
    """Stand-alone full AND plane; every minterm line is a primary output."""
    backend = Backend(backend)
    net = new_netlist(n, name=f"and-plane-{backend.value}")
    minterms = range(1 << n)
    supply = build_literal_supply(net, n, literal_demand(minterms, n))
    lines = build_and_plane(net, minterms, n, backend, supply)
    for v in sorted(lines):
        net.mark_output(lines[v], label=f"m{v}")
    return net


def reference_or_plane(backend: Backend = Backend.MUX_FEYNMAN, k: int = 4) -> Netlist:
    """Stand-alone OR plane: ``k`` minterm lines folded into a single output."""
    backend = Backend(backend)
    net = new_netlist(k, name=f"or-plane-{backend.value}", labels=[f"m{i}" for i in range(k)])
    if k:
        out = fold_chain(net, backend.or_role, list(net.primary_inputs), OR_PLANE)
    else:
        out = net.add_constant(0)
    net.mark_output(out, label="f")
    return net
