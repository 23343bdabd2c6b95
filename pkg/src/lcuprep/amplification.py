"""Amplitude amplification around a transduction circuit, and the full pipeline.

The prepared unitary S is Hadamards on the address register, the oracle and
the transduction.  Each round applies the good-state reflection (phase -1
on control = 0, flag = 1) followed by S (I - 2|0><0|) S^dagger.  A final
oracle call clears the data register.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import modified, standard
from .circuit import Circuit, RegisterLayout, mcz, x
from .encoding import AmplitudeSpec, build_address_superposition, build_oracle
from .simulator import StateVector, postselect, simulate

ALGORITHMS = ("standard", "modified")


@dataclass(frozen=True)
class PipelineConfig:
    spec: AmplitudeSpec
    algorithm: str = "standard"
    rounds: int | str = "auto"
    decomposed: bool = False
    seed: int | None = None

    def __post_init__(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        if self.rounds != "auto":
            if isinstance(self.rounds, bool) or not isinstance(self.rounds, (int, np.integer)):
                raise ValueError(f"rounds must be 'auto' or a non-negative integer, got {self.rounds!r}")
            if self.rounds < 0:
                raise ValueError("rounds must be non-negative")
        if self.decomposed and self.algorithm != "standard":
            raise ValueError("only the standard transduction has a decomposed form")


def analytic_success(spec: AmplitudeSpec, algorithm: str) -> float:
    if algorithm == "standard":
        return standard.success_probability(spec)
    if algorithm == "modified":
        return modified.success_probability(spec)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def amplified_success(p0: float, rounds: int) -> float:
    theta = math.asin(math.sqrt(p0))
    return math.sin((2 * rounds + 1) * theta) ** 2


def optimal_rounds(p0: float) -> int:
    """Rounds that bring (2r+1) asin sqrt(p0) closest to pi/2 (the first peak)."""
    if not 0 < p0 <= 1:
        raise ValueError(f"success probability must lie in (0, 1], got {p0}")
    theta = math.asin(math.sqrt(p0))
    return max(0, round(math.pi / (4 * theta) - 0.5))


def success_constraints(layout: RegisterLayout) -> list[tuple[int, int]]:
    """Control all zero and flag one."""
    return [(q, 0) for q in layout.qubits("control")] + [(layout.qubits("flag")[0], 1)]


def build_good_reflection(layout: RegisterLayout, algorithm: str | None = None) -> Circuit:
    """Phase -1 on control = 0, flag = 1; identity elsewhere.

    The marked pattern is read off the layout, so ``algorithm`` only serves
    as a cross-check against the layout variant.
    """
    if algorithm is not None and layout.variant not in (None, algorithm):
        raise ValueError(f"layout was built for {layout.variant}, not {algorithm}")
    control = layout.qubits("control")
    flag = layout.qubits("flag")[0]
    if not control:
        raise ValueError("layout has no control register")
    return Circuit(layout, [mcz(control, flag, (0,) * len(control))])


def zero_reflection(layout: RegisterLayout) -> Circuit:
    """I - 2|0><0| on every non-ancilla qubit.

    Ancillas are clean between gates, so leaving them out of the marked
    pattern does not change the action on reachable states.
    """
    qubits = [q for name in ("address", "data", "control", "flag") for q in layout.qubits(name)]
    target = qubits[-1]
    return Circuit(layout, [x(target), mcz(qubits[:-1], target, (0,) * (len(qubits) - 1)), x(target)])


def build_initial_reflection(prepare: Circuit) -> Circuit:
    """S (I - 2|0><0|) S^dagger for the full preparation unitary S."""
    return prepare.inverse() + zero_reflection(prepare.layout) + prepare


def pipeline_layout(spec: AmplitudeSpec, algorithm: str, decomposed: bool = False,
                    extra_ancilla: int = 0) -> RegisterLayout:
    if algorithm == "standard":
        return standard.transduction_layout(spec, decomposed, extra_ancilla)
    return modified.transduction_layout(spec, extra_ancilla)


def build_transduction(spec: AmplitudeSpec, algorithm: str, layout: RegisterLayout,
                       decomposed: bool = False) -> Circuit:
    if algorithm == "standard":
        return standard.build_transduce_standard(spec, decomposed, layout)
    if algorithm == "modified":
        return modified.build_transduce_modified(spec, layout)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def build_state_prep(spec: AmplitudeSpec, algorithm: str, layout: RegisterLayout,
                     decomposed: bool = False) -> Circuit:
    """S: address Hadamards, oracle, transduction."""
    return (build_address_superposition(layout) + build_oracle(spec, layout)
            + build_transduction(spec, algorithm, layout, decomposed))


def resolve_rounds(config: PipelineConfig) -> int:
    if config.rounds == "auto":
        return optimal_rounds(analytic_success(config.spec, config.algorithm))
    return int(config.rounds)


def build_pipeline(config: PipelineConfig, layout: RegisterLayout | None = None) -> Circuit:
    spec = config.spec
    if layout is None:
        layout = pipeline_layout(spec, config.algorithm, config.decomposed)
    prepare = build_state_prep(spec, config.algorithm, layout, config.decomposed)
    grover = build_good_reflection(layout) + build_initial_reflection(prepare)
    circuit = prepare
    for _ in range(resolve_rounds(config)):
        circuit = circuit + grover
    return circuit + build_oracle(spec, layout)


@dataclass
class PipelineResult:
    config: PipelineConfig
    circuit: Circuit
    rounds: int
    state: StateVector
    success_probability: float
    analytic_probability: float
    address_state: np.ndarray
    fidelity: float
    data_residual: float


def address_amplitudes(state: StateVector, layout: RegisterLayout) -> np.ndarray:
    """Address amplitudes with every other register at its reference value.

    Reference values are control 0, flag 1, and zero for data and ancilla.
    """
    index = [0] * state.num_qubits
    index[layout.qubits("flag")[0]] = 1
    for q in layout.qubits("address"):
        index[q] = slice(None)
    return np.array(state.tensor[tuple(index)]).reshape(-1)


def run_pipeline(config: PipelineConfig, layout: RegisterLayout | None = None) -> PipelineResult:
    circuit = build_pipeline(config, layout)
    layout = circuit.layout
    state = simulate(circuit)
    post = postselect(state, success_constraints(layout))
    spec = config.spec
    if post.collapsed is None:
        address = np.zeros(spec.d, dtype=complex)
        fid = 0.0
        residual = 0.0
    else:
        address = address_amplitudes(post.collapsed, layout)
        # each round contributes a global -1; fix the phase on the largest entry
        lead = address[np.argmax(np.abs(address))]
        address = address * (abs(lead) / lead)
        fid = float(abs(np.vdot(spec.target, address)) ** 2)
        residual = max(0.0, 1.0 - float(np.vdot(address, address).real))
    return PipelineResult(
        config=config,
        circuit=circuit,
        rounds=resolve_rounds(config),
        state=state,
        success_probability=post.probability,
        analytic_probability=analytic_success(spec, config.algorithm),
        address_state=address,
        fidelity=fid,
        data_residual=residual,
    )


def sample(state: StateVector | Circuit, shots: int, seed: int | None = None) -> dict[str, int]:
    """Seeded shot histogram keyed by bit strings, qubit 0 first."""
    if shots < 1:
        raise ValueError("shots must be positive")
    if isinstance(state, Circuit):
        state = simulate(state)
    probs = state.probabilities()
    probs = probs / probs.sum()
    rng = np.random.default_rng(seed)
    hits = rng.multinomial(shots, probs)
    q = state.num_qubits
    return {format(i, f"0{q}b"): int(hits[i]) for i in np.flatnonzero(hits)}


def success_frequency(histogram: dict[str, int], layout: RegisterLayout) -> float:
    constraints = success_constraints(layout)
    total = sum(histogram.values())
    good = sum(c for bits, c in histogram.items()
               if all(bits[q] == str(b) for q, b in constraints))
    return good / total
