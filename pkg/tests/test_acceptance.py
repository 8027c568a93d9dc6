"""Acceptance criteria; a PASS/FAIL line per criterion is printed in the summary."""
import itertools
import os
import random
import subprocess
import sys
import time

import numpy as np
import pytest

from rpla.cli import main
from rpla.cost import compare, constant_inputs, cost_report, garbage_outputs, quantum_cost, total_logical_calculation
from rpla.gates import (
    COPIER,
    FREDKIN_AND,
    FREDKIN_OR,
    MUX_AND,
    MUX_OR,
    NOT,
    GateKind,
    LogicCalc,
    apply_role,
    build_gate,
    eval_gate,
    is_conservative,
    is_reversible,
    weight_violations,
)
from rpla.netlist import validate
from rpla.pla import PlaSpec, format_pla
from rpla.serialize import deserialize_netlist
from rpla.simulate import all_vectors, boundary_lines, inverse_run, propagate, run
from rpla.synth import AND_PLANE, OR_PLANE, Backend, reference_and_plane, reference_or_plane, synthesize

from .conftest import random_spec

BACKENDS = list(Backend)


def ac(label):
    return pytest.mark.criterion(label)


def xor(*bits):
    return sum(bits) % 2


def NOTb(a):
    return 1 - a


# Closed-form gate equations, transcribed term by term.
EQUATIONS = {
    GateKind.FEYNMAN: lambda A, B: (A, xor(A, B)),
    GateKind.FREDKIN: lambda A, B, C: (A, xor(NOTb(A) & B, A & C), xor(NOTb(A) & C, A & B)),
    GateKind.MUX: lambda A, B, C: (A, xor(A, B, C), xor(NOTb(A) & C, A & B)),
}


# -- 1 ------------------------------------------------------------------------

@ac("AC1 gate algebra matches closed-form equations; reversibility; conservativity")
@pytest.mark.parametrize("kind", list(GateKind))
def test_ac1_truth_tables(kind):
    spec = build_gate(kind)
    for v in itertools.product((0, 1), repeat=spec.width):
        assert eval_gate(spec, v) == EQUATIONS[kind](*v)
    assert is_reversible(spec.perm)


@ac("AC1 gate algebra matches closed-form equations; reversibility; conservativity")
def test_ac1_conservativity():
    assert is_conservative(build_gate(GateKind.FREDKIN).perm)
    mux = build_gate(GateKind.MUX).perm
    assert not is_conservative(mux)
    assert ((1, 0, 0), (1, 1, 0)) in weight_violations(mux)


# -- 2 ------------------------------------------------------------------------

def fredkin_configurations():
    """Brute force: every (constant pin, bit, output pin) of the Fredkin table, with
    the two free pins in ascending order, tabulated over all free inputs."""
    spec = build_gate(GateKind.FREDKIN)
    found = {}
    for pin, bit, out in itertools.product(range(3), (0, 1), range(3)):
        free = [p for p in range(3) if p != pin]
        table = []
        for a, b in itertools.product((0, 1), repeat=2):
            vec = [0, 0, 0]
            vec[pin], vec[free[0]], vec[free[1]] = bit, a, b
            table.append(spec.perm[vec[0] * 4 + vec[1] * 2 + vec[2]] >> (2 - out) & 1)
        found.setdefault(tuple(table), []).append((pin, bit, out))
    return found


@ac("AC2 copier/NOT/AND/OR roles for both backends")
def test_ac2_fredkin_roles_vs_brute_force():
    configs = fredkin_configurations()
    and_table, or_table = (0, 0, 0, 1), (0, 1, 1, 1)
    assert (2, 0, 2) in configs[and_table]  # C=0, output R
    assert (1, 1, 2) in configs[or_table]   # B=1, output R
    assert FREDKIN_AND.constant_pins == ((2, 0),) and FREDKIN_AND.functional_outputs == (2,)
    assert FREDKIN_OR.constant_pins == ((1, 1),) and FREDKIN_OR.functional_outputs == (2,)


@ac("AC2 copier/NOT/AND/OR roles for both backends")
@pytest.mark.parametrize("backend", BACKENDS)
def test_ac2_roles(backend):
    for a, b in itertools.product((0, 1), repeat=2):
        assert apply_role(backend.and_role, (a, b)) == (a & b,)
        assert apply_role(backend.or_role, (a, b)) == (a | b,)
    for a in (0, 1):
        assert apply_role(COPIER, (a,)) == (a, a)
        assert apply_role(NOT, (a,)) == (1 - a,)
    assert {MUX_AND.base, MUX_OR.base} == {GateKind.MUX}


# -- 3 ------------------------------------------------------------------------

def three_input_specs(count=25, seed=31):
    rng = random.Random(seed)
    specs = []
    while len(specs) < count:
        m = rng.randint(1, 3)
        rows = tuple(
            ("".join(rng.choice("01-") for _ in range(3)), "".join(rng.choice("01") for _ in range(m)))
            for _ in range(rng.randint(0, 5))
        )
        specs.append(PlaSpec(3, m, rows))
    return specs


@ac("AC3 reference fabric: AND plane 37 gates, OR plane 3 gates")
@pytest.mark.parametrize("backend", BACKENDS)
def test_ac3_full_plane_and_37(backend, tmp_path):
    and_kind = backend.and_role.base
    for spec in three_input_specs():
        net = synthesize(spec, backend, full_plane=True)
        and_gates = [g for g in net.gates if g.plane == AND_PLANE]
        assert len(and_gates) == 37
        assert sum(g.spec.kind is and_kind for g in and_gates) == 16
        assert sum(g.spec.kind is GateKind.FEYNMAN for g in and_gates) == 21
    # through the CLI as well
    pla = tmp_path / "f.pla"
    pla.write_text(format_pla(three_input_specs(1, seed=4)[0]))
    out = tmp_path / "f.json"
    assert main(["synth", str(pla), "--backend", backend.value, "--full-plane", "-o", str(out)]) == 0
    assert cost_report(deserialize_netlist(out.read_text())).planes["and"].gate_total == 37


@ac("AC3 reference fabric: AND plane 37 gates, OR plane 3 gates")
@pytest.mark.parametrize("backend", BACKENDS)
def test_ac3_or_plane_3(backend, parity_spec):
    net = synthesize(parity_spec, backend, full_plane=True)
    assert len([g for g in net.gates if g.plane == OR_PLANE]) == 3
    assert len(reference_or_plane(backend).gates) == 3


# -- 4 ------------------------------------------------------------------------

@ac("AC4 total logical calculation of reference planes")
def test_ac4_logic_calc():
    assert total_logical_calculation(reference_and_plane(Backend.MUX_FEYNMAN)) == LogicCalc(69, 32, 16)
    assert total_logical_calculation(reference_and_plane(Backend.FREDKIN_FEYNMAN)) == LogicCalc(53, 64, 32)
    assert total_logical_calculation(reference_or_plane(Backend.MUX_FEYNMAN)) == LogicCalc(9, 6, 3)
    assert total_logical_calculation(reference_or_plane(Backend.FREDKIN_FEYNMAN)) == LogicCalc(6, 12, 6)


# -- 5 ------------------------------------------------------------------------

@ac("AC5 quantum cost 85/101 (AND), 12/15 (OR); MUX strictly cheaper")
def test_ac5_reference_qc():
    f, m = 21, 16
    assert quantum_cost(reference_and_plane(Backend.MUX_FEYNMAN)) == f + 4 * m == 85
    assert quantum_cost(reference_and_plane(Backend.FREDKIN_FEYNMAN)) == f + 5 * m == 101
    assert quantum_cost(reference_or_plane(Backend.MUX_FEYNMAN)) == 4 * 3 == 12
    assert quantum_cost(reference_or_plane(Backend.FREDKIN_FEYNMAN)) == 5 * 3 == 15
    table = compare()
    assert table.row("and", "QC").values == (85, 101)
    assert table.row("or", "QC").values == (12, 15)


@ac("AC5 quantum cost 85/101 (AND), 12/15 (OR); MUX strictly cheaper")
def test_ac5_mux_strictly_cheaper():
    rng = random.Random(2024)
    checked = 0
    for _ in range(200):
        spec = random_spec(rng)
        full = rng.random() < 0.25
        mux = synthesize(spec, Backend.MUX_FEYNMAN, full)
        fr = synthesize(spec, Backend.FREDKIN_FEYNMAN, full)
        if any(g.role in ("and", "or") for g in mux.gates):
            checked += 1
            assert quantum_cost(mux) < quantum_cost(fr)
    assert checked > 50


# -- 6 ------------------------------------------------------------------------

@ac("AC6 constant inputs 37 (AND) / 3 (OR); strict garbage with annotation")
@pytest.mark.parametrize("backend", BACKENDS)
def test_ac6_constants_and_garbage(backend):
    and_plane, or_plane = reference_and_plane(backend), reference_or_plane(backend)
    assert constant_inputs(and_plane) == 37
    assert constant_inputs(or_plane) == 3
    strict, note = garbage_outputs(and_plane)
    assert strict == 32  # two unused outputs per AND-role gate
    assert note
    rep = cost_report(and_plane)
    assert rep.garbage_strict == 32 and rep.garbage_note == note


# -- 7 ------------------------------------------------------------------------

@ac("AC7 200 random specs: equivalence, validity, inverse round trip (<10 s)")
def test_ac7_random_equivalence():
    rng = random.Random(12345)
    start = time.perf_counter()
    for _ in range(200):
        spec = random_spec(rng, max_n=4, max_m=3)
        xs = all_vectors(spec.n)
        expected = np.array([spec.evaluate(tuple(x)) for x in xs], dtype=np.uint8)
        for backend in BACKENDS:
            net = synthesize(spec, backend)
            assert validate(net) == []
            assert np.array_equal(run(net, xs), expected)
            ins, outs = boundary_lines(net)
            values = propagate(net, xs)
            back = inverse_run(net, np.stack([values[l] for l in outs], axis=1))
            declared = [net.lines[l].driver.bit for l in net.constant_lines]
            assert np.array_equal(back[:, : spec.n], xs)
            assert (back[:, spec.n :] == np.array(declared, dtype=np.uint8)).all()
    elapsed = time.perf_counter() - start
    assert elapsed < 10.0, f"took {elapsed:.2f}s"


# -- 8 ------------------------------------------------------------------------

@ac("AC8 synth/emit output is byte-identical across runs")
def test_ac8_determinism(parity_file, tmp_path):
    outputs = []
    env = dict(os.environ)
    for seed in ("1", "2"):
        env["PYTHONHASHSEED"] = seed
        run_outputs = []
        for args in (
            ["synth", str(parity_file), "--backend", "mux"],
            ["synth", str(parity_file), "--backend", "fredkin", "--full-plane"],
        ):
            proc = subprocess.run([sys.executable, "-m", "rpla", *args], capture_output=True, env=env)
            assert proc.returncode == 0
            doc = tmp_path / f"{args[3]}.json"
            doc.write_bytes(proc.stdout)
            run_outputs.append(proc.stdout)
            for fmt in ("dot", "json"):
                emitted = subprocess.run(
                    [sys.executable, "-m", "rpla", "emit", str(doc), "--format", fmt],
                    capture_output=True,
                    env=env,
                )
                assert emitted.returncode == 0
                run_outputs.append(emitted.stdout)
        outputs.append(run_outputs)
    assert outputs[0] == outputs[1]
