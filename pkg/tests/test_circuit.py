import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from helpers import dense_unitary
from lcuprep.circuit import (
    Circuit, Gate, GateCounts, GateError, Kind, RegisterLayout, ccx, ceil_log2, count, cx, cz, ch,
    h, inverse, mcx, mcz, ry, x,
)
from lcuprep.simulator import full_unitary


def free_layout(q):
    return RegisterLayout(0, q, 0, flag=0)


def test_append_grows_by_one():
    c = Circuit(free_layout(2))
    c2 = c.append(h(0))
    assert len(c) == 0
    assert len(c2) == 1 and c2.gates[0] == h(0)


def test_append_out_of_range():
    with pytest.raises(GateError, match="out of range"):
        Circuit(free_layout(2)).append(x(2))


def test_duplicate_index_rejected():
    with pytest.raises(GateError, match="repeated"):
        ccx(0, 1, 1)


@pytest.mark.parametrize("make", [
    lambda: Gate(Kind.CX, (), (0,)),
    lambda: Gate(Kind.H, (1,), (0,)),
    lambda: Gate(Kind.CCX, (0,), (1,)),
    lambda: Gate(Kind.MCX, (), (0,), pattern=()),
    lambda: Gate(Kind.MCX, (0, 1), (2,), pattern=(1,)),
    lambda: Gate(Kind.MCZ, (0,), (1,), pattern=(2,)),
    lambda: Gate(Kind.RY, (), (0,)),
    lambda: Gate(Kind.RY, (), (0,), angle=float("nan")),
    lambda: Gate(Kind.X, (), (0, 1)),
    lambda: Gate(Kind.CX, (0,), (1,), pattern=(1,)),
])
def test_malformed_gates_rejected(make):
    with pytest.raises(GateError):
        make()


def test_inverse_examples():
    L = free_layout(2)
    assert inverse(Circuit(L, [h(0)])).gates == (h(0),)
    c = Circuit(L, [ry(0.3, 0), cx(0, 1)])
    assert inverse(c).gates == (cx(0, 1), ry(-0.3, 0))


def _random_circuit(rng, q, length):
    gates = []
    for _ in range(length):
        kind = rng.integers(9)
        qs = [int(v) for v in rng.permutation(q)]
        if kind == 0:
            gates.append(x(qs[0]))
        elif kind == 1:
            gates.append(h(qs[0]))
        elif kind == 2:
            gates.append(ry(rng.uniform(-np.pi, np.pi), qs[0]))
        elif kind == 3:
            gates.append(cx(qs[0], qs[1]))
        elif kind == 4:
            gates.append(cz(qs[0], qs[1]))
        elif kind == 5:
            gates.append(ch(qs[0], qs[1]))
        elif kind == 6:
            gates.append(ccx(qs[0], qs[1], qs[2]))
        else:
            k = int(rng.integers(1, q))
            pattern = [int(b) for b in rng.integers(0, 2, k)]
            make = mcx if kind == 7 else mcz
            gates.append(make(qs[:k], qs[k], pattern))
    return Circuit(free_layout(q), gates)


def test_inverse_round_trip_random_circuit():
    rng = np.random.default_rng(7)
    c = _random_circuit(rng, 4, 20)
    u = full_unitary(c + c.inverse())
    assert np.allclose(u, np.eye(16), atol=1e-12, rtol=0)


def test_simulator_matches_dense_oracle():
    rng = np.random.default_rng(11)
    c = _random_circuit(rng, 4, 30)
    assert np.allclose(full_unitary(c), dense_unitary(c), atol=1e-12, rtol=0)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(1, 25))
def test_inversion_round_trip_property(seed, length):
    c = _random_circuit(np.random.default_rng(seed), 5, length)
    u = full_unitary(c + inverse(c))
    assert np.allclose(u, np.eye(32), atol=1e-12, rtol=0)


def test_count_empty():
    c = count(Circuit(free_layout(3)))
    assert (c.toffoli, c.cnot, c.single_qubit, c.mcx_by_arity) == (0, 0, 0, {})
    assert c.total_qubits == 3


def test_count_classification():
    L = free_layout(5)
    c = Circuit(L, [x(0), h(1), ry(0.1, 2), cx(0, 1), mcx([0], 1, [0]), cz(0, 1), mcz([2], 3),
                    ch(0, 1), ccx(0, 1, 2), mcx([0, 1], 2, [0, 1]), mcz([0, 1], 2),
                    mcx([0, 1, 2], 3), mcz([0, 1, 2, 3], 4, [0, 0, 0, 0])])
    got = count(c)
    assert got.single_qubit == 3
    assert got.cnot == 2
    assert got.cz == 2
    assert got.ch == 1
    assert got.toffoli == 3
    assert got.mcx_by_arity == {3: 1, 4: 1}
    assert got.total_gates == len(c)


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(0, 15), st.integers(0, 15))
def test_count_conservation(seed, n1, n2):
    rng = np.random.default_rng(seed)
    c1, c2 = _random_circuit(rng, 5, n1), _random_circuit(rng, 5, n2)
    assert count(c1 + c2) == count(c1) + count(c2)


def test_gate_counts_add_is_fieldwise():
    a = GateCounts(toffoli=1, cnot=2, mcx_by_arity={3: 1}, total_qubits=4)
    b = GateCounts(toffoli=2, single_qubit=5, mcx_by_arity={3: 2, 5: 1}, total_qubits=6)
    s = a + b
    assert (s.toffoli, s.cnot, s.single_qubit) == (3, 2, 5)
    assert s.mcx_by_arity == {3: 3, 5: 1}
    assert s.total_qubits == 6


class TestLayout:
    def test_registers_are_contiguous_in_order(self):
        L = RegisterLayout.standard(2, 4, ancilla=1)
        assert L.qubits("address") == (0, 1)
        assert L.qubits("data") == (2, 3, 4, 5)
        assert L.qubits("control") == (6, 7)
        assert L.qubits("flag") == (8,)
        assert L.qubits("ancilla") == (9,)
        assert L.num_qubits == 10
        assert L.register_of(7) == ("control", 1)

    def test_variant_sizes_enforced(self):
        with pytest.raises(ValueError):
            RegisterLayout(1, 4, 3, variant="standard")
        with pytest.raises(ValueError):
            RegisterLayout(1, 4, 4, variant="modified")
        assert RegisterLayout.modified(1, 4).control == 5
        assert RegisterLayout.standard(1, 5).control == 3

    def test_on_layout_only_grows_ancilla(self):
        c = Circuit(RegisterLayout.standard(1, 2), [x(0)])
        wider = c.on_layout(c.layout.with_ancilla(2))
        assert wider.num_qubits == c.num_qubits + 2
        with pytest.raises(ValueError):
            c.on_layout(RegisterLayout.standard(2, 2))

    @pytest.mark.parametrize("n,m", [(1, 0), (2, 1), (3, 2), (4, 2), (5, 3), (8, 3), (9, 4)])
    def test_ceil_log2(self, n, m):
        assert ceil_log2(n) == m


def test_compose_width_mismatch():
    with pytest.raises(ValueError):
        Circuit(free_layout(2)) + Circuit(free_layout(3))
