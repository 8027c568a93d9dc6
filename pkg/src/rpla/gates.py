"""Reversible gate library: Feynman, Fredkin and MUX gates as permutation tables.

Bit-vector convention: pin ``A`` (pin 0) is the most significant bit of the
table index, so for a 3-pin gate the input ``(A, B, C)`` has index
``A << 2 | B << 1 | C``.

Each gate is also available in a few *roles*, i.e. with some pins tied to a
constant so that one output computes a familiar Boolean function:

=========  ========  ===============  ===================
role       gate      constant pins    functional outputs
=========  ========  ===============  ===================
copier     Feynman   B = 0            P = A, Q = A
not        Feynman   B = 1            Q = A'
and        MUX       C = 0            R = AB
or         MUX       B = 1            R = A + C
and        Fredkin   C = 0            R = AB
or         Fredkin   B = 1            R = A + C
=========  ========  ===============  ===================
"""
from __future__ import annotations

import functools
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, List, Mapping, Optional, Sequence, Tuple

Bits = Tuple[int, ...]


class GateKind(str, Enum):
    FEYNMAN = "feynman"
    FREDKIN = "fredkin"
    MUX = "mux"


class RoleName(str, Enum):
    COPIER = "copier"
    NOT = "not"
    AND = "and"
    OR = "or"
    RAW = "raw"


class GateWidthError(ValueError):
    """Raised when a bit-vector does not match the gate's pin count."""


@dataclass(frozen=True)
class LogicCalc:
    """Operator tally (XOR, AND, NOT) of a gate or circuit."""

    alpha: int = 0
    beta: int = 0
    delta: int = 0

    def __add__(self, other: "LogicCalc") -> "LogicCalc":
        if not isinstance(other, LogicCalc):
            return NotImplemented
        return LogicCalc(self.alpha + other.alpha, self.beta + other.beta, self.delta + other.delta)

    def __sub__(self, other: "LogicCalc") -> "LogicCalc":
        if not isinstance(other, LogicCalc):
            return NotImplemented
        return LogicCalc(self.alpha - other.alpha, self.beta - other.beta, self.delta - other.delta)

    def __mul__(self, k: int) -> "LogicCalc":
        return LogicCalc(self.alpha * k, self.beta * k, self.delta * k)

    __rmul__ = __mul__

    @property
    def total(self) -> int:
        return self.alpha + self.beta + self.delta

    def as_tuple(self) -> Tuple[int, int, int]:
        return (self.alpha, self.beta, self.delta)

    def __str__(self) -> str:
        return f"{self.alpha}a + {self.beta}b + {self.delta}d"


# Closed-form output expressions.  These generate the permutation tables.

def _feynman(a: int, b: int) -> Bits:
    return (a, a ^ b)


def _fredkin(a: int, b: int, c: int) -> Bits:
    na = 1 - a
    return (a, (na & b) ^ (a & c), (na & c) ^ (a & b))


def _mux(a: int, b: int, c: int) -> Bits:
    na = 1 - a
    return (a, a ^ b ^ c, (na & c) ^ (a & b))


_EXPRESSIONS: Dict[GateKind, Callable[..., Bits]] = {
    GateKind.FEYNMAN: _feynman,
    GateKind.FREDKIN: _fredkin,
    GateKind.MUX: _mux,
}

_WIDTH = {GateKind.FEYNMAN: 2, GateKind.FREDKIN: 3, GateKind.MUX: 3}
_QUANTUM_COST = {GateKind.FEYNMAN: 1, GateKind.FREDKIN: 5, GateKind.MUX: 4}
_LOGIC = {
    GateKind.FEYNMAN: LogicCalc(1, 0, 0),
    GateKind.FREDKIN: LogicCalc(2, 4, 2),
    GateKind.MUX: LogicCalc(3, 2, 1),
}


def bits_to_index(bits: Sequence[int]) -> int:
    """Encode a bit-vector with element 0 as the most significant bit."""
    index = 0
    for b in bits:
        index = (index << 1) | int(b)
    return index


def index_to_bits(index: int, width: int) -> Bits:
    return tuple((index >> (width - 1 - i)) & 1 for i in range(width))


@dataclass(frozen=True)
class GateSpec:
    kind: GateKind
    width: int
    perm: Tuple[int, ...]
    quantum_cost: int
    logic_signature: LogicCalc
    inverse: Tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.perm) != 1 << self.width:
            raise ValueError(f"perm has {len(self.perm)} entries, expected {1 << self.width}")
        if not is_reversible(self.perm):
            raise ValueError(f"{self.kind.value} table is not a bijection")
        inv = [0] * len(self.perm)
        for i, o in enumerate(self.perm):
            inv[o] = i
        object.__setattr__(self, "inverse", tuple(inv))


@functools.lru_cache(maxsize=None)
def build_gate(kind: GateKind) -> GateSpec:
    """Tabulate the closed-form equations of ``kind`` over every input vector."""
    kind = GateKind(kind)
    width = _WIDTH[kind]
    fn = _EXPRESSIONS[kind]
    perm = tuple(bits_to_index(fn(*index_to_bits(i, width))) for i in range(1 << width))
    return GateSpec(kind, width, perm, _QUANTUM_COST[kind], _LOGIC[kind])


def _check_bits(spec: GateSpec, bits: Sequence[int]) -> None:
    if len(bits) != spec.width:
        raise GateWidthError(
            f"{spec.kind.value} gate takes {spec.width} bits, got {len(bits)}"
        )
    if any(b not in (0, 1) for b in bits):
        raise ValueError(f"not a bit-vector: {tuple(bits)!r}")


def eval_gate(spec: GateSpec, inputs: Sequence[int]) -> Bits:
    _check_bits(spec, inputs)
    return index_to_bits(spec.perm[bits_to_index(inputs)], spec.width)


def invert_gate(spec: GateSpec, outputs: Sequence[int]) -> Bits:
    """Return the unique input vector that ``spec`` maps onto ``outputs``."""
    _check_bits(spec, outputs)
    return index_to_bits(spec.inverse[bits_to_index(outputs)], spec.width)


def is_reversible(perm: Sequence[int]) -> bool:
    n = len(perm)
    return sorted(perm) == list(range(n))


def weight_violations(perm: Sequence[int]) -> List[Tuple[Bits, Bits]]:
    """Every ``(input, output)`` pair of ``perm`` whose Hamming weights differ."""
    width = max(len(perm) - 1, 1).bit_length()
    return [
        (index_to_bits(i, width), index_to_bits(o, width))
        for i, o in enumerate(perm)
        if bin(i).count("1") != bin(o).count("1")
    ]


def weight_violation(perm: Sequence[int]) -> Optional[Tuple[Bits, Bits]]:
    """First weight-changing input with its image; ``None`` for a conservative table."""
    found = weight_violations(perm)
    return found[0] if found else None


def is_conservative(perm: Sequence[int]) -> bool:
    return weight_violation(perm) is None


@dataclass(frozen=True)
class GateRole:
    """A gate with some pins tied to constants.

    ``constant_pins`` is a tuple of ``(pin, bit)`` pairs; the remaining pins,
    in ascending order, are the free inputs.  ``functional_outputs`` lists the
    output pins that carry the role's result.
    """

    name: RoleName
    base: GateKind
    constant_pins: Tuple[Tuple[int, int], ...]
    functional_outputs: Tuple[int, ...]

    @property
    def spec(self) -> GateSpec:
        return build_gate(self.base)

    @property
    def constants(self) -> Mapping[int, int]:
        return dict(self.constant_pins)

    @property
    def free_pins(self) -> Tuple[int, ...]:
        fixed = self.constants
        return tuple(p for p in range(self.spec.width) if p not in fixed)

    def pin_vector(self, free_inputs: Sequence[int]) -> Bits:
        """Interleave ``free_inputs`` with the constants into a full input vector."""
        free = self.free_pins
        if len(free_inputs) != len(free):
            raise GateWidthError(
                f"{self.name.value} role on {self.base.value} takes {len(free)} free inputs, "
                f"got {len(free_inputs)}"
            )
        vec = dict(self.constant_pins)
        vec.update(zip(free, free_inputs))
        return tuple(vec[p] for p in range(self.spec.width))


COPIER = GateRole(RoleName.COPIER, GateKind.FEYNMAN, ((1, 0),), (0, 1))
NOT = GateRole(RoleName.NOT, GateKind.FEYNMAN, ((1, 1),), (1,))
MUX_AND = GateRole(RoleName.AND, GateKind.MUX, ((2, 0),), (2,))
MUX_OR = GateRole(RoleName.OR, GateKind.MUX, ((1, 1),), (2,))
FREDKIN_AND = GateRole(RoleName.AND, GateKind.FREDKIN, ((2, 0),), (2,))
FREDKIN_OR = GateRole(RoleName.OR, GateKind.FREDKIN, ((1, 1),), (2,))


def raw_role(kind: GateKind) -> GateRole:
    kind = GateKind(kind)
    return GateRole(RoleName.RAW, kind, (), tuple(range(_WIDTH[kind])))


def apply_role(role: GateRole, free_inputs: Sequence[int]) -> Bits:
    """Evaluate ``role`` on its free inputs and return its functional outputs."""
    out = eval_gate(role.spec, role.pin_vector(free_inputs))
    return tuple(out[p] for p in role.functional_outputs)
