"""Gate-level circuit representation.

Registers are laid out in the fixed order Address, Data, Control, Flag,
Ancilla.  Qubit 0 is the most significant bit of a basis-state index, and
within every register the first qubit is the most significant bit of the
register value.
"""
from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Sequence

REGISTER_ORDER = ("address", "data", "control", "flag", "ancilla")


class GateError(ValueError):
    """Raised for gates that do not fit their kind or the circuit."""


class Kind(Enum):
    X = "x"
    H = "h"
    RY = "ry"
    CX = "cx"
    CZ = "cz"
    CH = "ch"
    CCX = "ccx"
    MCX = "mcx"
    MCZ = "mcz"


_ARITY = {
    Kind.X: 0, Kind.H: 0, Kind.RY: 0,
    Kind.CX: 1, Kind.CZ: 1, Kind.CH: 1,
    Kind.CCX: 2,
}
_SELF_INVERSE = frozenset(k for k in Kind if k is not Kind.RY)


@dataclass(frozen=True)
class Gate:
    """One gate.  ``pattern`` holds the required control values for MCX/MCZ."""

    kind: Kind
    controls: tuple[int, ...]
    targets: tuple[int, ...]
    angle: float | None = None
    pattern: tuple[int, ...] | None = None

    def __post_init__(self):
        object.__setattr__(self, "controls", tuple(int(q) for q in self.controls))
        object.__setattr__(self, "targets", tuple(int(q) for q in self.targets))
        if self.pattern is not None:
            object.__setattr__(self, "pattern", tuple(int(b) for b in self.pattern))
        self._check_shape()

    def _check_shape(self):
        if len(self.targets) != 1:
            raise GateError(f"{self.kind.value}: expected exactly one target, got {len(self.targets)}")
        if self.kind in (Kind.MCX, Kind.MCZ):
            if len(self.controls) < 1:
                raise GateError(f"{self.kind.value}: needs at least one control")
            if self.pattern is None or len(self.pattern) != len(self.controls):
                raise GateError(f"{self.kind.value}: pattern length must equal control count")
            if any(b not in (0, 1) for b in self.pattern):
                raise GateError(f"{self.kind.value}: pattern entries must be 0 or 1")
        else:
            if len(self.controls) != _ARITY[self.kind]:
                raise GateError(
                    f"{self.kind.value}: expected {_ARITY[self.kind]} controls, got {len(self.controls)}"
                )
            if self.pattern is not None:
                raise GateError(f"{self.kind.value}: pattern only allowed on mcx/mcz")
        if self.kind is Kind.RY:
            if self.angle is None or not math.isfinite(self.angle):
                raise GateError("ry: angle must be a finite number")
        elif self.angle is not None:
            raise GateError(f"{self.kind.value}: takes no angle")
        qubits = self.qubits
        if len(set(qubits)) != len(qubits):
            raise GateError(f"{self.kind.value}: repeated qubit index in {qubits}")
        if any(q < 0 for q in qubits):
            raise GateError(f"{self.kind.value}: negative qubit index in {qubits}")

    @property
    def qubits(self) -> tuple[int, ...]:
        return self.controls + self.targets

    @property
    def target(self) -> int:
        return self.targets[0]

    @property
    def control_values(self) -> tuple[int, ...]:
        """Required control bit values; all ones unless a pattern is given."""
        return self.pattern if self.pattern is not None else (1,) * len(self.controls)

    def validate(self, num_qubits: int) -> None:
        bad = [q for q in self.qubits if q >= num_qubits]
        if bad:
            raise GateError(
                f"{self.kind.value}: qubit index {bad[0]} out of range for {num_qubits} qubits"
            )

    def inverse(self) -> Gate:
        if self.kind in _SELF_INVERSE:
            return self
        return Gate(self.kind, self.controls, self.targets, angle=-self.angle)

    def __str__(self):
        name = self.kind.value
        if self.angle is not None:
            name += f"({self.angle:.17g})"
        if self.pattern is not None and any(b == 0 for b in self.pattern):
            name += "[" + "".join(map(str, self.pattern)) + "]"
        return f"{name} {','.join(map(str, self.qubits))}"


# Constructors ---------------------------------------------------------------

def x(q):
    return Gate(Kind.X, (), (q,))


def h(q):
    return Gate(Kind.H, (), (q,))


def ry(angle, q):
    return Gate(Kind.RY, (), (q,), angle=float(angle))


def cx(c, t):
    return Gate(Kind.CX, (c,), (t,))


def cz(c, t):
    return Gate(Kind.CZ, (c,), (t,))


def ch(c, t):
    return Gate(Kind.CH, (c,), (t,))


def ccx(c0, c1, t):
    return Gate(Kind.CCX, (c0, c1), (t,))


def mcx(controls: Sequence[int], target: int, pattern: Sequence[int] | None = None):
    controls = tuple(controls)
    if pattern is None:
        pattern = (1,) * len(controls)
    return Gate(Kind.MCX, controls, (target,), pattern=tuple(pattern))


def mcz(controls: Sequence[int], target: int, pattern: Sequence[int] | None = None):
    controls = tuple(controls)
    if pattern is None:
        pattern = (1,) * len(controls)
    return Gate(Kind.MCZ, controls, (target,), pattern=tuple(pattern))


def bits_of(value: int, width: int) -> tuple[int, ...]:
    """Binary digits of ``value``, most significant first."""
    if not 0 <= value < (1 << width):
        raise ValueError(f"{value} does not fit in {width} bits")
    return tuple((value >> (width - 1 - i)) & 1 for i in range(width))


# Layout ---------------------------------------------------------------------

@dataclass(frozen=True)
class RegisterLayout:
    """Register sizes and their global qubit ranges.

    ``variant`` records the transduction algorithm the layout was made for
    ("standard", "modified") or None for a free-form layout.
    """

    address: int
    data: int
    control: int
    flag: int = 1
    ancilla: int = 0
    variant: str | None = None

    def __post_init__(self):
        for name in REGISTER_ORDER:
            if getattr(self, name) < 0:
                raise ValueError(f"register {name} has negative size")
        if self.flag not in (0, 1):
            raise ValueError("flag register holds at most one qubit")
        if self.variant == "standard":
            if self.control != ceil_log2(self.data):
                raise ValueError(
                    f"standard layout needs ceil(log2 n) = {ceil_log2(self.data)} control qubits, got {self.control}"
                )
        elif self.variant == "modified":
            if self.control != self.data + 1:
                raise ValueError(
                    f"modified layout needs n+1 = {self.data + 1} control qubits, got {self.control}"
                )
        elif self.variant is not None:
            raise ValueError(f"unknown layout variant {self.variant!r}")

    @classmethod
    def standard(cls, address: int, n: int, ancilla: int = 0) -> RegisterLayout:
        return cls(address, n, ceil_log2(n), 1, ancilla, "standard")

    @classmethod
    def modified(cls, address: int, n: int, ancilla: int = 0) -> RegisterLayout:
        return cls(address, n, n + 1, 1, ancilla, "modified")

    @property
    def num_qubits(self) -> int:
        return sum(getattr(self, name) for name in REGISTER_ORDER)

    def offset(self, register: str) -> int:
        start = 0
        for name in REGISTER_ORDER:
            if name == register:
                return start
            start += getattr(self, name)
        raise KeyError(register)

    def qubits(self, register: str) -> tuple[int, ...]:
        start = self.offset(register)
        return tuple(range(start, start + getattr(self, register)))

    def register_of(self, qubit: int) -> tuple[str, int]:
        """Return (register name, index within register) for a global qubit."""
        for name in REGISTER_ORDER:
            start = self.offset(name)
            if start <= qubit < start + getattr(self, name):
                return name, qubit - start
        raise IndexError(f"qubit {qubit} outside layout of {self.num_qubits} qubits")

    def with_ancilla(self, ancilla: int) -> RegisterLayout:
        return RegisterLayout(self.address, self.data, self.control, self.flag, ancilla, self.variant)


def ceil_log2(n: int) -> int:
    if n < 1:
        raise ValueError("ceil_log2 needs n >= 1")
    return (n - 1).bit_length()


# Circuit --------------------------------------------------------------------

@dataclass(frozen=True)
class Circuit:
    """An immutable gate list bound to a register layout."""

    layout: RegisterLayout
    gates: tuple[Gate, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        q = self.layout.num_qubits
        for g in self.gates:
            g.validate(q)

    @property
    def num_qubits(self) -> int:
        return self.layout.num_qubits

    def __len__(self):
        return len(self.gates)

    def __iter__(self):
        return iter(self.gates)

    def append(self, gate: Gate) -> Circuit:
        gate.validate(self.num_qubits)
        return Circuit(self.layout, self.gates + (gate,))

    def extend(self, gates: Iterable[Gate]) -> Circuit:
        return Circuit(self.layout, self.gates + tuple(gates))

    def compose(self, other: Circuit) -> Circuit:
        """Run ``self`` then ``other``; layouts must have equal width."""
        if other.num_qubits != self.num_qubits:
            raise ValueError(
                f"cannot compose circuits on {self.num_qubits} and {other.num_qubits} qubits"
            )
        return Circuit(self.layout, self.gates + other.gates)

    def __add__(self, other: Circuit) -> Circuit:
        return self.compose(other)

    def inverse(self) -> Circuit:
        return Circuit(self.layout, tuple(g.inverse() for g in reversed(self.gates)))

    def on_layout(self, layout: RegisterLayout) -> Circuit:
        """Rebind the same gates to a layout that only grows the ancilla block."""
        if layout.num_qubits < self.num_qubits:
            raise ValueError("new layout is narrower than the circuit")
        for name in REGISTER_ORDER[:-1]:
            if getattr(layout, name) != getattr(self.layout, name):
                raise ValueError(f"register {name} differs between layouts")
        return Circuit(layout, self.gates)

    def count(self) -> GateCounts:
        return count(self)

    def __str__(self):
        return "\n".join(str(g) for g in self.gates)


def inverse(circuit: Circuit) -> Circuit:
    return circuit.inverse()


def append(circuit: Circuit, gate: Gate) -> Circuit:
    return circuit.append(gate)


# Counting -------------------------------------------------------------------

@dataclass(frozen=True)
class GateCounts:
    """Gate tallies.

    Two-controlled MCX/MCZ count as Toffoli and single-controlled MCX as
    CNOT; ``mcx_by_arity`` collects every MCX/MCZ with three or more
    controls.  ``total_qubits`` is the circuit width and combines by max
    when counts are added.
    """

    toffoli: int = 0
    cnot: int = 0
    cz: int = 0
    ch: int = 0
    single_qubit: int = 0
    mcx_by_arity: dict[int, int] = field(default_factory=dict)
    total_qubits: int = 0

    def __add__(self, other: GateCounts) -> GateCounts:
        arity = Counter(self.mcx_by_arity)
        arity.update(other.mcx_by_arity)
        return GateCounts(
            toffoli=self.toffoli + other.toffoli,
            cnot=self.cnot + other.cnot,
            cz=self.cz + other.cz,
            ch=self.ch + other.ch,
            single_qubit=self.single_qubit + other.single_qubit,
            mcx_by_arity=dict(sorted(arity.items())),
            total_qubits=max(self.total_qubits, other.total_qubits),
        )

    @property
    def total_gates(self) -> int:
        return (self.toffoli + self.cnot + self.cz + self.ch + self.single_qubit
                + sum(self.mcx_by_arity.values()))

    def as_dict(self) -> dict:
        return {
            "toffoli": self.toffoli,
            "cnot": self.cnot,
            "cz": self.cz,
            "ch": self.ch,
            "single_qubit": self.single_qubit,
            "mcx_by_arity": {str(k): v for k, v in self.mcx_by_arity.items()},
            "total_qubits": self.total_qubits,
        }


def count(circuit: Circuit) -> GateCounts:
    tally = Counter()
    arity = Counter()
    for g in circuit.gates:
        k = g.kind
        if k in (Kind.X, Kind.H, Kind.RY):
            tally["single_qubit"] += 1
        elif k is Kind.CX:
            tally["cnot"] += 1
        elif k is Kind.CZ:
            tally["cz"] += 1
        elif k is Kind.CH:
            tally["ch"] += 1
        elif k is Kind.CCX:
            tally["toffoli"] += 1
        else:
            nc = len(g.controls)
            if nc == 2:
                tally["toffoli"] += 1
            elif nc == 1:
                tally["cnot" if k is Kind.MCX else "cz"] += 1
            else:
                arity[nc] += 1
    return GateCounts(mcx_by_arity=dict(sorted(arity.items())),
                      total_qubits=circuit.num_qubits, **tally)
