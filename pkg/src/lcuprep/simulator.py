"""Dense statevector simulation.

Amplitudes are stored as a complex128 tensor of shape ``(2,) * q``, with
axis ``k`` belonging to qubit ``k``; flattening in C order gives the usual
basis index with qubit 0 as the most significant bit.  Every gate is applied
in place on strided views, multi-controlled gates straight from their
control pattern.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .circuit import Circuit, Gate, Kind

MAX_QUBITS = 26
MAX_UNITARY_QUBITS = 10
ZERO_PROBABILITY = 1e-300

_SQRT1_2 = 1 / math.sqrt(2)
_H = np.array([[_SQRT1_2, _SQRT1_2], [_SQRT1_2, -_SQRT1_2]])


def _ry_matrix(angle: float) -> np.ndarray:
    c, s = math.cos(angle / 2), math.sin(angle / 2)
    return np.array([[c, -s], [s, c]])


class StateVector:
    """Unit-norm amplitudes over ``num_qubits`` qubits."""

    __slots__ = ("num_qubits", "tensor")

    def __init__(self, amplitudes, num_qubits: int | None = None):
        amps = np.asarray(amplitudes, dtype=np.complex128)
        if num_qubits is None:
            num_qubits = int(round(math.log2(amps.size)))
        if amps.size != 1 << num_qubits:
            raise ValueError(f"{amps.size} amplitudes do not describe {num_qubits} qubits")
        self.num_qubits = num_qubits
        self.tensor = amps.reshape((2,) * num_qubits).copy()

    @property
    def amplitudes(self) -> np.ndarray:
        return self.tensor.reshape(-1)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    def copy(self) -> StateVector:
        return StateVector(self.tensor, self.num_qubits)

    def __repr__(self):
        return f"StateVector(num_qubits={self.num_qubits})"


def _check_size(q: int):
    if not 1 <= q <= MAX_QUBITS:
        raise ValueError(f"supported qubit counts are 1..{MAX_QUBITS}, got {q}")


def init_zero(q: int) -> StateVector:
    _check_size(q)
    amps = np.zeros(1 << q, dtype=np.complex128)
    amps[0] = 1.0
    return StateVector(amps, q)


def basis_state(q: int, index: int) -> StateVector:
    _check_size(q)
    amps = np.zeros(1 << q, dtype=np.complex128)
    amps[index] = 1.0
    return StateVector(amps, q)


# Gate kernels ---------------------------------------------------------------
# ``tensor`` may carry trailing batch axes; qubit axes always come first.

def _controlled_view(tensor: np.ndarray, gate: Gate):
    """View with controls fixed to their required values, plus the target axis."""
    index = [slice(None)] * tensor.ndim
    for q, b in zip(gate.controls, gate.control_values):
        index[q] = b
    view = tensor[tuple(index)]
    axis = gate.target - sum(1 for q in gate.controls if q < gate.target)
    return view, axis


def _apply_matrix(view: np.ndarray, axis: int, u: np.ndarray):
    v = np.moveaxis(view, axis, 0)
    a0 = v[0].copy()
    a1 = v[1]
    v[0] = u[0, 0] * a0 + u[0, 1] * a1
    v[1] = u[1, 0] * a0 + u[1, 1] * a1


def _apply_flip(view: np.ndarray, axis: int):
    v = np.moveaxis(view, axis, 0)
    tmp = v[0].copy()
    v[0] = v[1]
    v[1] = tmp


def _apply_phase(view: np.ndarray, axis: int):
    v = np.moveaxis(view, axis, 0)
    v[1] *= -1


def apply_gate(tensor: np.ndarray, gate: Gate) -> None:
    """Apply one gate in place."""
    view, axis = _controlled_view(tensor, gate)
    kind = gate.kind
    if kind in (Kind.X, Kind.CX, Kind.CCX, Kind.MCX):
        _apply_flip(view, axis)
    elif kind in (Kind.CZ, Kind.MCZ):
        _apply_phase(view, axis)
    elif kind in (Kind.H, Kind.CH):
        _apply_matrix(view, axis, _H)
    elif kind is Kind.RY:
        _apply_matrix(view, axis, _ry_matrix(gate.angle))
    else:  # pragma: no cover - Kind is closed
        raise ValueError(f"unsupported gate {kind}")


def apply(circuit: Circuit, state: StateVector) -> StateVector:
    """Return a new state: ``circuit`` applied to ``state``."""
    if circuit.num_qubits != state.num_qubits:
        raise ValueError(
            f"circuit acts on {circuit.num_qubits} qubits, state has {state.num_qubits}"
        )
    out = state.copy()
    for gate in circuit.gates:
        apply_gate(out.tensor, gate)
    return out


def simulate(circuit: Circuit, state: StateVector | None = None) -> StateVector:
    """Run ``circuit`` from ``state`` (default all-zero)."""
    if state is None:
        state = init_zero(circuit.num_qubits)
    return apply(circuit, state)


def apply_batch(circuit: Circuit, columns: np.ndarray) -> np.ndarray:
    """Apply ``circuit`` to each column of a ``(2**q, k)`` array."""
    q = circuit.num_qubits
    cols = np.array(columns, dtype=np.complex128, copy=True)
    if cols.shape[0] != 1 << q:
        raise ValueError("row count must be 2**num_qubits")
    tensor = cols.reshape((2,) * q + cols.shape[1:])
    for gate in circuit.gates:
        apply_gate(tensor, gate)
    return tensor.reshape(cols.shape)


def full_unitary(circuit: Circuit) -> np.ndarray:
    """Matrix whose column k is the circuit applied to basis state k."""
    q = circuit.num_qubits
    if q > MAX_UNITARY_QUBITS:
        raise ValueError(f"full_unitary is limited to {MAX_UNITARY_QUBITS} qubits, got {q}")
    return apply_batch(circuit, np.eye(1 << q, dtype=np.complex128))


def basis_permutation(circuit: Circuit) -> np.ndarray:
    """Classical action of an X-type reversible circuit on every basis index.

    Tracks integer bit strings rather than amplitudes, so it is independent of
    the statevector kernels and scales to a few tens of millions of inputs.
    """
    q = circuit.num_qubits
    states = np.arange(1 << q, dtype=np.int64)
    for g in circuit.gates:
        if g.kind not in (Kind.X, Kind.CX, Kind.CCX, Kind.MCX):
            raise ValueError(f"{g.kind.value} is not a classical reversible gate")
        mask = np.ones(states.shape, dtype=bool)
        for c, b in zip(g.controls, g.control_values):
            mask &= ((states >> (q - 1 - c)) & 1) == b
        states = np.where(mask, states ^ (1 << (q - 1 - g.target)), states)
    return states


# Measurement-style queries ------------------------------------------------

@dataclass
class PostSelection:
    constraints: tuple[tuple[int, int], ...]
    probability: float
    collapsed: StateVector | None


def constraint_mask(num_qubits: int, constraints: Iterable[tuple[int, int]]) -> np.ndarray:
    mask = np.ones((2,) * num_qubits, dtype=bool)
    for qubit, bit in constraints:
        index = [slice(None)] * num_qubits
        index[qubit] = 1 - bit
        mask[tuple(index)] = False
    return mask.reshape(-1)


def postselect(state: StateVector, constraints: Sequence[tuple[int, int]]) -> PostSelection:
    constraints = tuple((int(q), int(b)) for q, b in constraints)
    for q, b in constraints:
        if not 0 <= q < state.num_qubits or b not in (0, 1):
            raise ValueError(f"bad constraint ({q}, {b})")
    mask = constraint_mask(state.num_qubits, constraints)
    kept = np.where(mask, state.amplitudes, 0)
    probability = float(np.vdot(kept, kept).real)
    if probability < ZERO_PROBABILITY:
        return PostSelection(constraints, 0.0, None)
    return PostSelection(constraints, min(probability, 1.0),
                         StateVector(kept / math.sqrt(probability), state.num_qubits))


def fidelity(a, b) -> float:
    """|<a|b>|^2 for states or plain amplitude arrays of equal size."""
    va = a.amplitudes if isinstance(a, StateVector) else np.asarray(a, dtype=np.complex128).reshape(-1)
    vb = b.amplitudes if isinstance(b, StateVector) else np.asarray(b, dtype=np.complex128).reshape(-1)
    if va.shape != vb.shape:
        raise ValueError(f"size mismatch: {va.size} vs {vb.size}")
    return float(abs(np.vdot(va, vb)) ** 2)


def equal_up_to_phase(a, b, atol: float = 1e-10) -> bool:
    va = a.amplitudes if isinstance(a, StateVector) else np.asarray(a).reshape(-1)
    vb = b.amplitudes if isinstance(b, StateVector) else np.asarray(b).reshape(-1)
    overlap = np.vdot(va, vb)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return bool(np.allclose(va * phase, vb, atol=atol, rtol=0))
