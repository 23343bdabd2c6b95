"""Fixed-point amplitude words and the XOR data-loading oracle."""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .circuit import Circuit, RegisterLayout, bits_of, h, mcx, x


@dataclass(frozen=True)
class FixedPointWord:
    """An n-bit binary fraction 0.b_{n-1}...b_0 stored as an integer."""

    bits: int
    precision: int

    def __post_init__(self):
        if self.precision < 1:
            raise ValueError("precision must be at least 1 bit")
        if not 0 <= self.bits < (1 << self.precision):
            raise ValueError(f"word {self.bits} does not fit in {self.precision} bits")

    @property
    def digits(self) -> tuple[int, ...]:
        """Bits from weight 1/2 down to weight 2**-n."""
        return bits_of(self.bits, self.precision)

    def __float__(self):
        return dequantize(self)


def quantize(value: float, bits: int) -> FixedPointWord:
    """Truncate ``value`` in [0, 1) to ``bits`` fractional bits."""
    if bits < 1:
        raise ValueError("bits must be >= 1")
    if not 0.0 <= value < 1.0:
        raise ValueError(f"amplitude {value!r} outside [0, 1)")
    return FixedPointWord(int(math.floor(value * (1 << bits))), bits)


def dequantize(word: FixedPointWord) -> float:
    return word.bits / (1 << word.precision)


def _is_power_of_two(d: int) -> bool:
    return d >= 1 and d & (d - 1) == 0


@dataclass(frozen=True)
class AmplitudeSpec:
    """The classical amplitude vector, quantized to ``bits`` bits per entry."""

    values: tuple[float, ...]
    bits: int
    words: tuple[FixedPointWord, ...] = field(init=False, repr=False)

    def __post_init__(self):
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "values", values)
        d = len(values)
        if not _is_power_of_two(d):
            raise ValueError(f"number of amplitudes must be a power of two, got {d}")
        words = tuple(quantize(v, self.bits) for v in values)
        object.__setattr__(self, "words", words)
        if all(w.bits == 0 for w in words):
            raise ValueError(f"all amplitudes quantize to zero at {self.bits} bits")

    @property
    def d(self) -> int:
        return len(self.values)

    @property
    def address_qubits(self) -> int:
        return self.d.bit_length() - 1

    @property
    def quantized(self) -> np.ndarray:
        return np.array([dequantize(w) for w in self.words])

    @property
    def l2_norm(self) -> float:
        return float(np.linalg.norm(self.quantized))

    @property
    def target(self) -> np.ndarray:
        """Normalised target amplitudes over the address register."""
        q = self.quantized
        return q / np.linalg.norm(q)


def build_oracle(spec: AmplitudeSpec, layout: RegisterLayout) -> Circuit:
    """|j>|y> -> |j>|y XOR x_j>, one MCX per set bit of every word.

    Data qubit ``i`` holds the bit of weight 2**-(i+1).
    """
    if layout.address != spec.address_qubits or layout.data != spec.bits:
        raise ValueError(
            f"layout (address={layout.address}, data={layout.data}) does not match "
            f"spec (address={spec.address_qubits}, data={spec.bits})"
        )
    address = layout.qubits("address")
    data = layout.qubits("data")
    gates = []
    for j, word in enumerate(spec.words):
        pattern = bits_of(j, len(address))
        for i, bit in enumerate(word.digits):
            if not bit:
                continue
            if address:
                gates.append(mcx(address, data[i], pattern))
            else:
                # d = 1: the word is loaded unconditionally
                gates.append(x(data[i]))
    return Circuit(layout, gates)


def build_address_superposition(layout: RegisterLayout) -> Circuit:
    return Circuit(layout, [h(q) for q in layout.qubits("address")])
