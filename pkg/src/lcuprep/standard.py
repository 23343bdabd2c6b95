"""Amplitude transduction with a binary-indexed LCU control register.

The control register of m = ceil(log2 n) qubits is rotated into the product
state whose amplitude on |i> is proportional to 2**(-(i+1)/2); n
multi-controlled NOTs kick data bit i onto the flag; the rotation is then
undone.  Post-selecting control = 0, flag = 1 leaves amplitude x_j / a on
every address, with a = 1 - 2**(-2**m).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, RegisterLayout, bits_of, ccx, ceil_log2, cx, mcx, ry
from .encoding import AmplitudeSpec


@dataclass(frozen=True)
class RyAngleSet:
    """Rotation half-angles theta_i: qubit i is prepared in cos|0> + sin|1>."""

    m: int
    angles: tuple[float, ...]
    angle_bits: int | None = None

    @property
    def normalization(self) -> float:
        return 1.0 - 2.0 ** (-(2.0 ** self.m))

    @property
    def omegas(self) -> tuple[float, ...]:
        return tuple(t / math.pi for t in self.angles)

    def truncated(self, k: int) -> RyAngleSet:
        """Floor each theta_i / pi to ``k`` fractional bits."""
        if k < 1:
            raise ValueError("angle precision must be at least one bit")
        scale = 2 ** k
        angles = tuple(math.floor(w * scale) / scale * math.pi for w in self.omegas)
        return RyAngleSet(self.m, angles, k)

    def amplitudes(self):
        """Amplitudes of the prepared product state, by control value."""
        state = np.ones(1)
        for t in self.angles:
            state = np.kron(state, [math.cos(t), math.sin(t)])
        return state


def ry_angles(n: int, angle_bits: int | None = None) -> RyAngleSet:
    """Angles for n coefficients, theta_i = atan(2**(-2**(m-1-i) / 2)).

    The arctangent form equals the cosine form
    cos^2 theta_i = 2**2**(m-1-i) / (2**2**(m-1-i) + 1) without forming
    2**2**(m-1), which overflows binary64 for m > 10.
    """
    if n < 2:
        raise ValueError("precision n must be at least 2")
    m = ceil_log2(n)
    angles = tuple(math.atan(2.0 ** (-(2.0 ** (m - 1 - i)) / 2)) for i in range(m))
    out = RyAngleSet(m, angles)
    return out.truncated(angle_bits) if angle_bits is not None else out


def control_layout(n: int) -> RegisterLayout:
    return RegisterLayout(0, 0, ceil_log2(n), flag=0)


def build_prepare_A(n: int, layout: RegisterLayout | None = None,
                    angle_bits: int | None = None,
                    angles: RyAngleSet | None = None) -> Circuit:
    """m single-qubit rotations; the gate angle is twice the half-angle."""
    if angles is None:
        angles = ry_angles(n, angle_bits)
    if layout is None:
        layout = control_layout(n)
    control = layout.qubits("control")
    if len(control) != angles.m:
        raise ValueError(f"need {angles.m} control qubits, layout has {len(control)}")
    return Circuit(layout, [ry(2 * t, q) for t, q in zip(angles.angles, control)])


def _check_layout(n: int, layout: RegisterLayout):
    m = ceil_log2(n)
    if layout.control != m:
        raise ValueError(f"standard transduction needs {m} control qubits, layout has {layout.control}")
    if layout.data != n:
        raise ValueError(f"layout data register has {layout.data} qubits, expected {n}")
    if layout.flag != 1:
        raise ValueError("layout has no flag qubit")


def build_kickback(n: int, layout: RegisterLayout) -> Circuit:
    """The i-th MCX fires on control == i and data bit i, flipping the flag."""
    _check_layout(n, layout)
    m = layout.control
    control = layout.qubits("control")
    data = layout.qubits("data")
    flag = layout.qubits("flag")[0]
    gates = [mcx(control + (data[i],), flag, bits_of(i, m) + (1,)) for i in range(n)]
    return Circuit(layout, gates)


def decompose_cascade(n: int, layout: RegisterLayout) -> Circuit:
    """Toffoli/CNOT ladder equal to :func:`build_kickback` with clean ancillas.

    Walks the binary tree of control values depth first, holding the AND of
    the control literals of level l+1 in ancilla l.  Sibling subtrees share
    their parent AND: the switch from bit 0 to bit 1 is one CNOT from the
    parent, so each internal node costs two Toffolis and one CNOT and each
    leaf one Toffoli, 3n - 4 Toffolis and n - 2 CNOTs overall.
    """
    _check_layout(n, layout)
    if n & (n - 1):
        raise ValueError(f"cascade decomposition needs n a power of two, got {n}")
    m = layout.control
    if layout.ancilla < m - 1:
        raise ValueError(f"cascade decomposition needs {m - 1} ancillas, layout has {layout.ancilla}")
    c = layout.qubits("control")
    data = layout.qubits("data")
    flag = layout.qubits("flag")[0]
    anc = layout.qubits("ancilla")[: m - 1]
    gates = []

    if m == 1:
        for i in range(2):
            gates.append(mcx((c[0], data[i]), flag, (i, 1)))
        return Circuit(layout, gates)

    def and_gate(level, prefix, bit):
        # target anc[level] ^= literal(parent) AND (c[level + 1] == bit)
        if level == 0:
            return mcx((c[0], c[1]), anc[0], (prefix[0], bit))
        if bit:
            return ccx(anc[level - 1], c[level + 1], anc[level])
        return mcx((anc[level - 1], c[level + 1]), anc[level], (1, 0))

    def switch(level, prefix):
        if level == 0:
            return cx(c[0], anc[0]) if prefix[0] else mcx((c[0],), anc[0], (0,))
        return cx(anc[level - 1], anc[level])

    def subtree(level, prefix):
        gates.append(and_gate(level, prefix, 0))
        descend(level, prefix + (0,))
        gates.append(switch(level, prefix))
        descend(level, prefix + (1,))
        gates.append(and_gate(level, prefix, 1))

    def descend(level, prefix):
        if level == m - 2:
            i = int("".join(map(str, prefix)), 2)
            gates.append(ccx(anc[level], data[i], flag))
        else:
            subtree(level + 1, prefix)

    for top in (0, 1):
        subtree(0, (top,))
    return Circuit(layout, gates)


def transduction_layout(spec: AmplitudeSpec, decomposed: bool = False,
                        extra_ancilla: int = 0) -> RegisterLayout:
    m = ceil_log2(spec.bits)
    ladder = max(m - 1, 0) if decomposed else 0
    return RegisterLayout.standard(spec.address_qubits, spec.bits, ancilla=ladder + extra_ancilla)


def build_transduce_standard(spec: AmplitudeSpec, decomposed: bool = False,
                             layout: RegisterLayout | None = None,
                             angle_bits: int | None = None) -> Circuit:
    """A, the kick-back cascade, then A dagger."""
    n = spec.bits
    if n < 2:
        raise ValueError("standard transduction needs n >= 2")
    if layout is None:
        layout = transduction_layout(spec, decomposed)
    prepare = build_prepare_A(n, layout, angle_bits)
    cascade = decompose_cascade(n, layout) if decomposed else build_kickback(n, layout)
    return prepare + cascade + prepare.inverse()


def normalization(n: int) -> float:
    return 1.0 - 2.0 ** (-(2.0 ** ceil_log2(n)))


def success_probability(spec: AmplitudeSpec) -> float:
    """(||x|| / (a sqrt(d)))**2 for the quantized amplitudes."""
    a = normalization(spec.bits)
    return (spec.l2_norm / (a * math.sqrt(spec.d))) ** 2
