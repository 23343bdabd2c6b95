"""Amplitude transduction with a one-hot LCU control register.

A controlled-H / CNOT ladder on n+1 control qubits builds the gradient state
whose one-hot component at qubit i has amplitude 2**(-(i+1)/2), plus an
unused tail at qubit n.  Toffolis on (control i, data i) flip the flag, and
the inverse ladder follows.  Post-selecting control = 0, flag = 1 leaves
amplitude x_j on every address.
"""
from __future__ import annotations

import math
from typing import Sequence

from .circuit import Circuit, RegisterLayout, ccx, ch, cx, ry, x
from .encoding import AmplitudeSpec


def ladder_layout(width: int) -> RegisterLayout:
    return RegisterLayout(0, 0, width, flag=0)


def build_prepare_gradient(n: int, layout: RegisterLayout | None = None) -> Circuit:
    if n < 1:
        raise ValueError("gradient ladder needs n >= 1")
    if layout is None:
        layout = ladder_layout(n + 1)
    c = layout.qubits("control")
    if len(c) != n + 1:
        raise ValueError(f"gradient ladder needs {n + 1} control qubits, layout has {len(c)}")
    gates = [x(c[0])]
    for i in range(n):
        gates += [ch(c[i], c[i + 1]), cx(c[i + 1], c[i])]
    return Circuit(layout, gates)


def build_kickback_modified(n: int, layout: RegisterLayout) -> Circuit:
    if layout.control != n + 1:
        raise ValueError(f"modified transduction needs {n + 1} control qubits, layout has {layout.control}")
    if layout.data != n:
        raise ValueError(f"layout data register has {layout.data} qubits, expected {n}")
    if layout.flag != 1:
        raise ValueError("layout has no flag qubit")
    c = layout.qubits("control")
    data = layout.qubits("data")
    flag = layout.qubits("flag")[0]
    # control qubit n carries the unused tail and gets no kick-back
    return Circuit(layout, [ccx(c[i], data[i], flag) for i in range(n)])


def transduction_layout(spec: AmplitudeSpec, extra_ancilla: int = 0) -> RegisterLayout:
    return RegisterLayout.modified(spec.address_qubits, spec.bits, ancilla=extra_ancilla)


def build_transduce_modified(spec: AmplitudeSpec, layout: RegisterLayout | None = None) -> Circuit:
    n = spec.bits
    if layout is None:
        layout = transduction_layout(spec)
    ladder = build_prepare_gradient(n, layout)
    return ladder + build_kickback_modified(n, layout) + ladder.inverse()


def success_probability(spec: AmplitudeSpec) -> float:
    """(||x|| / sqrt(d))**2 for the quantized amplitudes."""
    return spec.l2_norm ** 2 / spec.d


def controlled_ry(angle: float, control: int, target: int):
    """Gates for a controlled Ry: two CNOTs around two half rotations."""
    return [ry(angle / 2, target), cx(control, target), ry(-angle / 2, target), cx(control, target)]


def lcu_ladder_angles(coefficients: Sequence[float]) -> list[float]:
    """Ry angles that leave sqrt(a_i / sum a) on one-hot position i."""
    coeffs = [float(a) for a in coefficients]
    if not coeffs:
        raise ValueError("need at least one coefficient")
    if any(not a > 0 for a in coeffs):
        raise ValueError("coefficients must be positive")
    angles = []
    remaining = math.fsum(coeffs)
    for a in coeffs[:-1]:
        # keep a / remaining on position i, pass the rest down the ladder
        stay = min(a / remaining, 1.0)
        angles.append(2 * math.acos(math.sqrt(stay)))
        remaining -= a
    return angles


def build_prepare_lcu_coefficients(coefficients: Sequence[float],
                                   layout: RegisterLayout | None = None) -> Circuit:
    """Ladder with controlled-Ry in place of controlled-H; no unused tail."""
    angles = lcu_ladder_angles(coefficients)
    width = len(angles) + 1
    if layout is None:
        layout = ladder_layout(width)
    c = layout.qubits("control")
    if len(c) != width:
        raise ValueError(f"need {width} control qubits, layout has {len(c)}")
    gates = [x(c[0])]
    for i, angle in enumerate(angles):
        gates += controlled_ry(angle, c[i], c[i + 1])
        gates.append(cx(c[i + 1], c[i]))
    return Circuit(layout, gates)
