"""Sum-of-products specifications and the Berkeley ``.pla`` text format.

Accepted grammar (one directive or row per line)::

    .i N            number of inputs (required, before any row)
    .o M            number of outputs (required, before any row)
    .p K            optional; must equal the number of rows
    .ilb a b c      optional input labels (N names)
    .ob f g         optional output labels (M names)
    <cube> <outs>   cube over {0,1,-}^N, outputs over {0,1}^M
    .e / .end       optional terminator; anything after it is ignored

``#`` starts a comment; blank lines are skipped.  Output don't-cares are
rejected since no minimisation step could exploit them.

Input 0 is the leftmost cube character and the most significant bit of a
minterm index, so cube ``1-0`` covers minterms 4 (``100``) and 6 (``110``).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

CUBE_CHARS = frozenset("01-")
OUT_CHARS = frozenset("01")


class PlaParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class PlaSpec:
    n: int
    m: int
    cubes: Tuple[Tuple[str, str], ...] = ()
    input_names: Optional[Tuple[str, ...]] = None
    output_names: Optional[Tuple[str, ...]] = None

    def __post_init__(self) -> None:
        if self.n < 1 or self.m < 1:
            raise ValueError(f"need at least one input and one output, got n={self.n}, m={self.m}")
        object.__setattr__(self, "cubes", tuple((str(c), str(o)) for c, o in self.cubes))
        for cube, outs in self.cubes:
            if len(cube) != self.n or set(cube) - CUBE_CHARS:
                raise ValueError(f"bad cube {cube!r} for {self.n} inputs")
            if len(outs) != self.m or set(outs) - OUT_CHARS:
                raise ValueError(f"bad output pattern {outs!r} for {self.m} outputs")
        for names, size, what in ((self.input_names, self.n, "input"), (self.output_names, self.m, "output")):
            if names is not None:
                object.__setattr__(self, f"{what}_names", tuple(names))
                if len(names) != size:
                    raise ValueError(f"{len(names)} {what} labels for {size} {what}s")

    @property
    def k(self) -> int:
        return len(self.cubes)

    def evaluate(self, bits: Sequence[int]) -> Tuple[int, ...]:
        """Evaluate the cubes directly on one input vector (no minterm expansion)."""
        if len(bits) != self.n:
            raise ValueError(f"expected {self.n} bits, got {len(bits)}")
        result = [0] * self.m
        for cube, outs in self.cubes:
            if all(ch == "-" or int(ch) == b for ch, b in zip(cube, bits)):
                for j, o in enumerate(outs):
                    if o == "1":
                        result[j] = 1
        return tuple(result)


@dataclass(frozen=True)
class MintermCover:
    """Per-output sets of minterm indices over ``n`` inputs."""

    n: int
    outputs: Tuple[FrozenSet[int], ...] = field(default_factory=tuple)

    def __post_init__(self) -> None:
        sets = tuple(frozenset(int(i) for i in s) for s in self.outputs)
        limit = 1 << self.n
        for j, s in enumerate(sets):
            bad = [i for i in s if not 0 <= i < limit]
            if bad:
                raise ValueError(f"output {j}: minterms {sorted(bad)} outside [0, {limit})")
        object.__setattr__(self, "outputs", sets)

    @property
    def m(self) -> int:
        return len(self.outputs)

    @property
    def minterms(self) -> List[int]:
        """Union of all outputs' minterms, ascending."""
        return sorted(set().union(*self.outputs)) if self.outputs else []

    def table(self) -> np.ndarray:
        """``(2^n, m)`` array; entry ``[v, j]`` is 1 iff ``v`` is in output ``j``'s set."""
        t = np.zeros((1 << self.n, self.m), dtype=np.uint8)
        for j, s in enumerate(self.outputs):
            if s:
                t[sorted(s), j] = 1
        return t


def cube_minterms(cube: str) -> List[int]:
    free = [i for i, ch in enumerate(cube) if ch == "-"]
    base = int(cube.replace("-", "0"), 2)
    n = len(cube)
    out = []
    for combo in itertools.product((0, 1), repeat=len(free)):
        idx = base
        for pos, bit in zip(free, combo):
            idx |= bit << (n - 1 - pos)
        out.append(idx)
    return sorted(out)


def expand_to_minterms(spec: PlaSpec) -> MintermCover:
    sets: List[set] = [set() for _ in range(spec.m)]
    for cube, outs in spec.cubes:
        covered = cube_minterms(cube)
        for j, o in enumerate(outs):
            if o == "1":
                sets[j].update(covered)
    return MintermCover(spec.n, tuple(frozenset(s) for s in sets))


def spec_from_cover(cover: MintermCover) -> PlaSpec:
    """One row per minterm, merging outputs that share it."""
    rows = []
    for v in cover.minterms:
        cube = format(v, f"0{cover.n}b")
        outs = "".join("1" if v in s else "0" for s in cover.outputs)
        rows.append((cube, outs))
    return PlaSpec(cover.n, cover.m, tuple(rows))


def _int_arg(args: List[str], directive: str, lineno: int) -> int:
    if len(args) != 1 or not args[0].isdigit():
        raise PlaParseError(f"{directive} takes one non-negative integer", lineno)
    return int(args[0])


def parse_pla(text: str) -> PlaSpec:
    n = m = p = None
    ilb = ob = None
    rows: List[Tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        col0 = raw.index(line[0]) + 1
        tokens = line.split()
        head, args = tokens[0], tokens[1:]
        if head.startswith("."):
            if head in (".e", ".end"):
                break
            if head == ".i":
                n = _int_arg(args, head, lineno)
            elif head == ".o":
                m = _int_arg(args, head, lineno)
            elif head == ".p":
                p = _int_arg(args, head, lineno)
            elif head == ".ilb":
                ilb = tuple(args)
            elif head == ".ob":
                ob = tuple(args)
            else:
                raise PlaParseError(f"unsupported directive {head}", lineno, col0)
            continue
        if n is None or m is None:
            raise PlaParseError("product term before .i and .o", lineno, col0)
        if len(tokens) == 1 and len(head) == n + m:
            cube, outs = head[:n], head[n:]
        elif len(tokens) == 2:
            cube, outs = tokens
        else:
            raise PlaParseError(f"expected '<cube> <outputs>', got {line!r}", lineno, col0)
        cube_col = col0
        outs_col = raw.index(outs, col0 - 1 + len(cube)) + 1
        for offset, ch in enumerate(cube):
            if ch not in CUBE_CHARS:
                raise PlaParseError(f"illegal input character {ch!r}", lineno, cube_col + offset)
        if len(cube) != n:
            raise PlaParseError(f"cube has {len(cube)} inputs, .i declares {n}", lineno, cube_col)
        for offset, ch in enumerate(outs):
            if ch not in OUT_CHARS:
                raise PlaParseError(f"illegal output character {ch!r}", lineno, outs_col + offset)
        if len(outs) != m:
            raise PlaParseError(f"row has {len(outs)} outputs, .o declares {m}", lineno, outs_col)
        rows.append((cube, outs))
    last = len(text.splitlines()) or 1
    if n is None or m is None:
        raise PlaParseError("missing .i or .o header", last)
    if n < 1 or m < 1:
        raise PlaParseError(".i and .o must be at least 1", last)
    if p is not None and p != len(rows):
        raise PlaParseError(f".p declares {p} terms but {len(rows)} were given", last)
    if ilb is not None and len(ilb) != n:
        raise PlaParseError(f".ilb lists {len(ilb)} labels for {n} inputs", last)
    if ob is not None and len(ob) != m:
        raise PlaParseError(f".ob lists {len(ob)} labels for {m} outputs", last)
    return PlaSpec(n, m, tuple(rows), ilb, ob)


def format_pla(spec: PlaSpec) -> str:
    lines = [f".i {spec.n}", f".o {spec.m}"]
    if spec.input_names:
        lines.append(".ilb " + " ".join(spec.input_names))
    if spec.output_names:
        lines.append(".ob " + " ".join(spec.output_names))
    lines.append(f".p {spec.k}")
    lines.extend(f"{cube} {outs}" for cube, outs in spec.cubes)
    lines.append(".e")
    return "\n".join(lines) + "\n"
