import itertools

import numpy as np
import pytest

from rpla.gates import COPIER, MUX_AND, MUX_OR, NOT, GateKind, build_gate
from rpla.netlist import new_netlist
from rpla.pla import MintermCover, PlaSpec, expand_to_minterms
from rpla.simulate import (
    EnumerationCapExceeded,
    InvalidNetlist,
    all_vectors,
    boundary_lines,
    check_circuit_bijective,
    check_equivalence,
    evaluate,
    inverse_evaluate,
    inverse_run,
    propagate,
    truth_table,
)
from rpla.synth import Backend, synthesize


def and_net():
    net = new_netlist(2)
    p, q, r = net.add_role(MUX_AND, net.primary_inputs)
    net.mark_output(r)
    return net, (p, q, r)


def or_net():
    net = new_netlist(2)
    *_, r = net.add_role(MUX_OR, net.primary_inputs)
    net.mark_output(r)
    return net


def not_net():
    net = new_netlist(1)
    p, q = net.add_role(NOT, net.primary_inputs)
    return net, (p, q)


def copier_net():
    net = new_netlist(1)
    p, q = net.add_role(COPIER, net.primary_inputs)
    net.mark_output(p)
    net.mark_output(q)
    return net


def test_evaluate_empty():
    net = new_netlist(2)
    assert evaluate(net, (0, 1)) == {0: 0, 1: 1}


def test_evaluate_not_and():
    net, (p, q) = not_net()
    assert evaluate(net, (1,))[q] == 0
    net, (p, q, r) = and_net()
    assert evaluate(net, (1, 1))[r] == 1


def test_evaluate_rejects_bad_width():
    net, _ = and_net()
    with pytest.raises(ValueError):
        evaluate(net, (1,))


def test_evaluate_visits_each_gate_once(parity_spec):
    net = synthesize(parity_spec, Backend.MUX_FEYNMAN, full_plane=True)
    seen = []
    evaluate(net, (1, 0, 1), on_gate=lambda g: seen.append(g.id))
    assert sorted(seen) == sorted(g.id for g in net.gates)
    assert len(seen) == len(net.gates) == 40


def test_truth_tables():
    assert truth_table(and_net()[0]).rows == ((0,), (0,), (0,), (1,))
    assert truth_table(or_net()).rows == ((0,), (1,), (1,), (1,))
    assert truth_table(copier_net()).rows == ((0, 0), (1, 1))


def test_truth_table_cap():
    net = new_netlist(5)
    with pytest.raises(EnumerationCapExceeded, match="2\\^4"):
        truth_table(net, cap=4)


def test_all_vectors_ordering():
    assert all_vectors(2).tolist() == [[0, 0], [0, 1], [1, 0], [1, 1]]


@pytest.mark.parametrize("kind", list(GateKind))
def test_single_gate_is_bijective(kind):
    spec = build_gate(kind)
    net = new_netlist(spec.width)
    net.add_gate(spec, net.primary_inputs)
    rep = check_circuit_bijective(net)
    assert rep.ok and rep.mode == "exhaustive" and rep.vectors == 2 ** spec.width


def test_dropping_an_output_breaks_bijectivity():
    net, (p, q, r) = and_net()
    _, outs = boundary_lines(net)
    rep = check_circuit_bijective(net, outputs=[l for l in outs if l != q])
    assert not rep.ok
    a, b = rep.witness
    assert a != b
    x = dict(zip(boundary_lines(net)[0], a))
    y = dict(zip(boundary_lines(net)[0], b))
    va = propagate(net, np.array([[x[0], x[1]]]), np.array([[x[2]]]))
    vb = propagate(net, np.array([[y[0], y[1]]]), np.array([[y[2]]]))
    assert all(va[l][0] == vb[l][0] for l in (p, r))


@pytest.mark.parametrize("backend", list(Backend))
def test_reference_rpla_bijective_sampled(parity_spec, backend):
    net = synthesize(parity_spec, backend, full_plane=True)
    rep = check_circuit_bijective(net)
    assert rep.ok
    assert rep.mode == "sampled"
    assert len(net.constant_lines) == 40


def test_inverse_examples():
    # And role with all three outputs primary: (P, Q, R) = (1, 0, 1) came from A=1, B=1, C=0
    net = new_netlist(2)
    for line in net.add_role(MUX_AND, net.primary_inputs):
        net.mark_output(line)
    assert inverse_evaluate(net, (1, 0, 1)) == (1, 1, 0)

    net = new_netlist(1)
    p, q = net.add_role(NOT, net.primary_inputs)
    net.mark_output(q)
    net.mark_output(p)
    assert inverse_evaluate(net, (0, 1)) == (1, 1)
    assert inverse_evaluate(net, {q: 0, p: 1}) == (1, 1)


def test_inverse_shape_mismatch():
    net, _ = and_net()
    with pytest.raises(ValueError):
        inverse_evaluate(net, (1, 0))


def corpus():
    nets = [and_net()[0], or_net(), not_net()[0], copier_net(), new_netlist(2)]
    specs = [
        PlaSpec(3, 1, (("001", "1"), ("010", "1"), ("100", "1"), ("111", "1"))),
        PlaSpec(2, 2, (("1-", "11"), ("01", "01"))),
        PlaSpec(1, 2, (("1", "10"),)),
    ]
    for spec in specs:
        for b in Backend:
            nets.append(synthesize(spec, b))
            nets.append(synthesize(spec, b, full_plane=True))
    return nets


@pytest.mark.parametrize("net", corpus())
def test_inverse_round_trip(net):
    ins, outs = boundary_lines(net)
    declared = [net.lines[l].driver.bit for l in net.constant_lines]
    for x in itertools.product((0, 1), repeat=net.n_inputs):
        values = evaluate(net, x)
        back = inverse_evaluate(net, [values[l] for l in outs])
        assert back == tuple(x) + tuple(declared)


@pytest.mark.parametrize("net", corpus())
def test_builder_netlists_are_bijective(net):
    assert check_circuit_bijective(net).ok


def test_inverse_run_batch_matches_scalar(parity_spec):
    net = synthesize(parity_spec, Backend.FREDKIN_FEYNMAN)
    ins, outs = boundary_lines(net)
    xs = all_vectors(3)
    values = propagate(net, xs)
    back = inverse_run(net, np.stack([values[l] for l in outs], axis=1))
    assert back[:, :3].tolist() == xs.tolist()


def test_equivalence(parity_spec):
    cover = expand_to_minterms(parity_spec)
    for b in Backend:
        assert check_equivalence(synthesize(parity_spec, b), cover).ok


def test_equivalence_empty_and_full_cover():
    empty = PlaSpec(3, 1, ())
    full = PlaSpec(3, 1, (("---", "1"),))
    for spec, expected in ((empty, 0), (full, 1)):
        net = synthesize(spec)
        assert check_equivalence(net, expand_to_minterms(spec)).ok
        assert set(truth_table(net).rows) == {(expected,)}


def test_equivalence_reports_first_mismatch(parity_spec):
    net = synthesize(parity_spec)
    wrong = MintermCover(3, (frozenset({1, 2, 4}),))
    rep = check_equivalence(net, wrong)
    assert not rep.ok
    assert rep.mismatch == ((1, 1, 1), (1,), (0,))


def test_equivalence_arity_mismatch(parity_spec):
    with pytest.raises(ValueError):
        check_equivalence(synthesize(parity_spec), MintermCover(2, (frozenset(),)))


def test_invalid_netlist_refused():
    net = new_netlist(1)
    net.primary_outputs.append(9)
    with pytest.raises(InvalidNetlist):
        evaluate(net, (0,))
