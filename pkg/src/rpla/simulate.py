"""Exhaustive forward/inverse simulation of reversible netlists.

All evaluation goes through a batched core: every line carries a ``uint8``
column with one entry per input vector, and each gate is a single table
lookup over the packed pin bits.  The scalar helpers wrap a batch of one.
"""
from __future__ import annotations

import functools
from typing import Callable, Dict, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

import numpy as np

from .gates import GateSpec, index_to_bits
from .netlist import Constant, GateInstance, Netlist, NetlistError, topo_order, validate
from .pla import MintermCover

DEFAULT_CAP = 16
BIJECTIVE_EXHAUSTIVE_CAP = 20
BIJECTIVE_SAMPLES = 1000
SAMPLED_ROW_BUDGET = 1 << 20

GateHook = Optional[Callable[[GateInstance], None]]


class EnumerationCapExceeded(ValueError):
    def __init__(self, needed: int, cap: int):
        super().__init__(f"enumerating 2^{needed} vectors exceeds the cap of 2^{cap}")
        self.needed = needed
        self.cap = cap


class InvalidNetlist(NetlistError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(d.message for d in self.diagnostics))


class TruthTable(NamedTuple):
    n: int
    m: int
    rows: Tuple[Tuple[int, ...], ...]

    def as_array(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.uint8).reshape(len(self.rows), self.m)


class BijectivityReport(NamedTuple):
    ok: bool
    mode: str  # "exhaustive" or "sampled"
    vectors: int
    witness: Optional[Tuple[Tuple[int, ...], Tuple[int, ...]]] = None

    def __bool__(self) -> bool:
        return self.ok


class EquivalenceReport(NamedTuple):
    ok: bool
    # (input bits, netlist outputs, expected outputs) of the first failing vector
    mismatch: Optional[Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]] = None

    def __bool__(self) -> bool:
        return self.ok


@functools.lru_cache(maxsize=None)
def _tables(spec: GateSpec) -> Tuple[np.ndarray, np.ndarray]:
    return np.array(spec.perm, dtype=np.intp), np.array(spec.inverse, dtype=np.intp)


def _checked_order(net: Netlist) -> List[GateInstance]:
    diags = validate(net)
    if diags:
        raise InvalidNetlist(diags)
    by_id = {g.id: g for g in net.gates}
    return [by_id[gid] for gid in topo_order(net)]


def _apply(table: np.ndarray, width: int, cols: Sequence[np.ndarray]) -> List[np.ndarray]:
    idx = np.zeros(len(cols[0]), dtype=np.intp)
    for c in cols:
        idx = (idx << 1) | c
    out = table[idx]
    return [((out >> (width - 1 - p)) & 1).astype(np.uint8) for p in range(width)]


def boundary_lines(net: Netlist) -> Tuple[List[int], List[int]]:
    """Full input and output vectors of a netlist, as line ids.

    Inputs are the primary inputs followed by the constant lines.  Outputs are
    the primary outputs followed by every other line without a consumer, in
    ascending id order.
    """
    ins = list(net.primary_inputs) + list(net.constant_lines)
    marked = set(net.primary_outputs)
    outs = list(net.primary_outputs) + [lid for lid in net.unconsumed_lines() if lid not in marked]
    return ins, outs


def propagate(
    net: Netlist,
    inputs: np.ndarray,
    constants: Optional[np.ndarray] = None,
    on_gate: GateHook = None,
) -> Dict[int, np.ndarray]:
    """Evaluate a batch of input vectors; return a column per line.

    ``inputs`` has shape ``(batch, n_inputs)``.  ``constants``, if given, has
    shape ``(batch, n_constants)`` and overrides the declared constant bits.
    """
    order = _checked_order(net)
    inputs = np.asarray(inputs, dtype=np.uint8)
    if inputs.ndim != 2 or inputs.shape[1] != net.n_inputs:
        raise ValueError(f"expected input shape (batch, {net.n_inputs}), got {inputs.shape}")
    batch = inputs.shape[0]
    values: Dict[int, np.ndarray] = {}
    for i, lid in enumerate(net.primary_inputs):
        values[lid] = inputs[:, i]
    if constants is None:
        for lid in net.constant_lines:
            driver = net.lines[lid].driver
            assert isinstance(driver, Constant)
            values[lid] = np.full(batch, driver.bit, dtype=np.uint8)
    else:
        constants = np.asarray(constants, dtype=np.uint8)
        if constants.shape != (batch, len(net.constant_lines)):
            raise ValueError(
                f"expected constant shape ({batch}, {len(net.constant_lines)}), got {constants.shape}"
            )
        for k, lid in enumerate(net.constant_lines):
            values[lid] = constants[:, k]
    for g in order:
        fwd, _ = _tables(g.spec)
        for lid, col in zip(g.outputs, _apply(fwd, g.spec.width, [values[l] for l in g.inputs])):
            values[lid] = col
        if on_gate is not None:
            on_gate(g)
    return values


def run(net: Netlist, inputs: np.ndarray) -> np.ndarray:
    """Primary outputs for a batch of input rows, shape ``(batch, n_outputs)``."""
    values = propagate(net, inputs)
    batch = np.asarray(inputs).shape[0]
    if not net.primary_outputs:
        return np.zeros((batch, 0), dtype=np.uint8)
    return np.stack([values[lid] for lid in net.primary_outputs], axis=1)


def evaluate(
    net: Netlist,
    inputs: Sequence[int],
    constants: Optional[Sequence[int]] = None,
    on_gate: GateHook = None,
) -> Dict[int, int]:
    """Assign a bit to every line for one input vector."""
    if len(inputs) != net.n_inputs:
        raise ValueError(f"netlist has {net.n_inputs} inputs, got {len(inputs)} bits")
    x = np.array([inputs], dtype=np.uint8).reshape(1, net.n_inputs)
    c = None if constants is None else np.array([constants], dtype=np.uint8).reshape(1, -1)
    values = propagate(net, x, c, on_gate)
    return {lid: int(col[0]) for lid, col in sorted(values.items())}


def all_vectors(n: int) -> np.ndarray:
    """Every n-bit vector in ascending index order, column 0 most significant."""
    idx = np.arange(1 << n, dtype=np.int64)
    shifts = np.arange(n - 1, -1, -1, dtype=np.int64)
    return ((idx[:, None] >> shifts[None, :]) & 1).astype(np.uint8).reshape(1 << n, n)


def truth_table(net: Netlist, cap: int = DEFAULT_CAP) -> TruthTable:
    if net.n_inputs > cap:
        raise EnumerationCapExceeded(net.n_inputs, cap)
    out = run(net, all_vectors(net.n_inputs))
    return TruthTable(net.n_inputs, net.n_outputs, tuple(tuple(int(b) for b in row) for row in out))


def _first_collision(rows: np.ndarray) -> Optional[Tuple[int, int]]:
    if rows.shape[1] == 0:
        return (0, 1) if rows.shape[0] > 1 else None
    packed = np.packbits(rows, axis=1)
    keys = np.ascontiguousarray(packed).view(np.dtype((np.void, packed.shape[1]))).ravel()
    _, first, inverse = np.unique(keys, return_index=True, return_inverse=True)
    inverse = inverse.ravel()
    dup = np.nonzero(first[inverse] != np.arange(len(keys)))[0]
    if len(dup) == 0:
        return None
    j = int(dup[0])
    return int(first[inverse[j]]), j


def check_circuit_bijective(
    net: Netlist,
    cap: int = BIJECTIVE_EXHAUSTIVE_CAP,
    samples: int = BIJECTIVE_SAMPLES,
    seed: int = 0,
    outputs: Optional[Sequence[int]] = None,
    input_cap: int = DEFAULT_CAP,
) -> BijectivityReport:
    """Check that the full input vector maps injectively onto the full output vector.

    Constant lines are treated as free inputs.  When ``n + c <= cap`` every
    vector is enumerated.  Otherwise the check covers all primary-input
    vectors under the declared constants plus ``samples`` random constant
    assignments, each crossed with every primary-input vector (or, past
    ``SAMPLED_ROW_BUDGET`` rows, ``samples`` uniformly random full vectors).

    ``outputs`` overrides the output line list; the default is
    :func:`boundary_lines`.
    """
    ins, outs = boundary_lines(net)
    if outputs is not None:
        outs = list(outputs)
    n, c = net.n_inputs, len(net.constant_lines)
    if n + c <= cap:
        mode = "exhaustive"
        full = all_vectors(n + c)
    else:
        if n > input_cap:
            raise EnumerationCapExceeded(n, input_cap)
        mode = "sampled"
        rng = np.random.default_rng(seed)
        declared = np.array([net.lines[l].driver.bit for l in net.constant_lines], dtype=np.uint8)
        consts = np.vstack([declared[None, :], rng.integers(0, 2, size=(samples, c), dtype=np.uint8)])
        consts = np.unique(consts, axis=0)
        xs = all_vectors(n)
        if len(xs) * len(consts) <= SAMPLED_ROW_BUDGET:
            full = np.hstack([np.repeat(xs, len(consts), axis=0), np.tile(consts, (len(xs), 1))])
        else:
            # too many rows to cross: declared slice plus uniformly random full vectors
            declared_slice = np.hstack([xs, np.tile(declared, (len(xs), 1))])
            extra = rng.integers(0, 2, size=(samples, n + c), dtype=np.uint8)
            full = np.unique(np.vstack([declared_slice, extra]), axis=0)
    values = propagate(net, full[:, :n], full[:, n:])
    result = np.stack([values[l] for l in outs], axis=1) if outs else np.zeros((len(full), 0), np.uint8)
    hit = _first_collision(result)
    if hit is None:
        return BijectivityReport(True, mode, len(full))
    a, b = hit
    witness = (tuple(int(x) for x in full[a]), tuple(int(x) for x in full[b]))
    return BijectivityReport(False, mode, len(full), witness)


def inverse_run(net: Netlist, outputs: np.ndarray) -> np.ndarray:
    """Batched inverse: full output rows to full input rows (see :func:`boundary_lines`)."""
    ins, outs = boundary_lines(net)
    order = _checked_order(net)
    outputs = np.asarray(outputs, dtype=np.uint8)
    if outputs.ndim != 2 or outputs.shape[1] != len(outs):
        raise ValueError(f"expected output shape (batch, {len(outs)}), got {outputs.shape}")
    values: Dict[int, np.ndarray] = {lid: outputs[:, k] for k, lid in enumerate(outs)}
    for g in reversed(order):
        _, inv = _tables(g.spec)
        for lid, col in zip(g.inputs, _apply(inv, g.spec.width, [values[l] for l in g.outputs])):
            values[lid] = col
    batch = outputs.shape[0]
    if not ins:
        return np.zeros((batch, 0), dtype=np.uint8)
    return np.stack([values[lid] for lid in ins], axis=1)


def inverse_evaluate(
    net: Netlist, outputs: Union[Sequence[int], Mapping[int, int]]
) -> Tuple[int, ...]:
    """Recover primary inputs and constant lines from a full output vector.

    ``outputs`` is either a bit sequence in :func:`boundary_lines` order or a
    mapping from each boundary output line id to its bit.
    """
    _, outs = boundary_lines(net)
    if isinstance(outputs, Mapping):
        missing = [lid for lid in outs if lid not in outputs]
        if missing or len(outputs) != len(outs):
            raise ValueError(f"output mapping must cover exactly lines {outs}")
        row = [outputs[lid] for lid in outs]
    else:
        row = list(outputs)
        if len(row) != len(outs):
            raise ValueError(f"netlist has {len(outs)} boundary outputs, got {len(row)} bits")
    back = inverse_run(net, np.array([row], dtype=np.uint8).reshape(1, len(outs)))
    return tuple(int(b) for b in back[0])


def check_equivalence(net: Netlist, reference: MintermCover, cap: int = DEFAULT_CAP) -> EquivalenceReport:
    """Compare primary outputs with minterm-membership evaluation on every input."""
    if reference.n != net.n_inputs or reference.m != net.n_outputs:
        raise ValueError(
            f"arity mismatch: netlist {net.n_inputs}->{net.n_outputs}, "
            f"reference {reference.n}->{reference.m}"
        )
    if net.n_inputs > cap:
        raise EnumerationCapExceeded(net.n_inputs, cap)
    got = run(net, all_vectors(net.n_inputs))
    expected = reference.table()
    bad = np.nonzero((got != expected).any(axis=1))[0]
    if len(bad) == 0:
        return EquivalenceReport(True)
    v = int(bad[0])
    return EquivalenceReport(
        False,
        (
            index_to_bits(v, net.n_inputs),
            tuple(int(b) for b in got[v]),
            tuple(int(b) for b in expected[v]),
        ),
    )
