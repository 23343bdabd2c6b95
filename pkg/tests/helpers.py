"""Shared oracles and builders for the test suite."""
import math

import numpy as np

from lcuprep.circuit import Kind
from lcuprep.encoding import AmplitudeSpec, build_address_superposition, build_oracle
from lcuprep.simulator import simulate

DEMO_VALUES = (0.25, 0.5)
DEMO_TARGET = np.array([1.0, 2.0]) / math.sqrt(5)

# filled by test_acceptance, printed in the terminal summary
ACCEPTANCE_LINES = []


def post_oracle(spec, layout):
    """Circuit producing the uniform address superposition with data loaded."""
    return build_address_superposition(layout) + build_oracle(spec, layout)


def run_transduction(spec, transduction):
    """Simulate H + oracle + transduction from |0...0>."""
    return simulate(post_oracle(spec, transduction.layout) + transduction)


def success_amplitudes(state, spec, layout):
    """Amplitude on (address j, data x_j, control 0, flag 1, ancilla 0) per j."""
    out = []
    words = [int(math.floor(v * 2 ** spec.bits)) for v in spec.values]
    for j, w in enumerate(words):
        index = [0] * state.num_qubits
        for i, q in enumerate(layout.qubits("address")):
            index[q] = (j >> (layout.address - 1 - i)) & 1
        for i, q in enumerate(layout.qubits("data")):
            index[q] = (w >> (layout.data - 1 - i)) & 1
        index[layout.qubits("flag")[0]] = 1
        out.append(state.tensor[tuple(index)])
    return np.array(out)


def random_spec(rng, d, n):
    while True:
        values = rng.random(d)
        if any(math.floor(v * 2 ** n) for v in values):
            return AmplitudeSpec(tuple(values), n)


def dense_gate_unitary(gate, q):
    """Brute-force 2**q matrix of one gate, built from integer bit arithmetic."""
    dim = 1 << q
    u = np.zeros((dim, dim), dtype=complex)

    def bit(s, k):
        return (s >> (q - 1 - k)) & 1

    for s in range(dim):
        fires = all(bit(s, c) == v for c, v in zip(gate.controls, gate.control_values))
        t = gate.target
        if not fires:
            u[s, s] = 1
            continue
        b = bit(s, t)
        s0, s1 = s & ~(1 << (q - 1 - t)), s | (1 << (q - 1 - t))
        if gate.kind in (Kind.X, Kind.CX, Kind.CCX, Kind.MCX):
            u[s1 if b == 0 else s0, s] = 1
        elif gate.kind in (Kind.CZ, Kind.MCZ):
            u[s, s] = -1 if b else 1
        else:
            if gate.kind is Kind.RY:
                c, sn = math.cos(gate.angle / 2), math.sin(gate.angle / 2)
                m = [[c, -sn], [sn, c]]
            else:
                r = 1 / math.sqrt(2)
                m = [[r, r], [r, -r]]
            u[s0, s] = m[0][b]
            u[s1, s] = m[1][b]
    return u


def dense_unitary(circuit):
    u = np.eye(1 << circuit.num_qubits, dtype=complex)
    for g in circuit.gates:
        u = dense_gate_unitary(g, circuit.num_qubits) @ u
    return u
