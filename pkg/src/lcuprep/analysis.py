"""Closed-form resource counts and rotation-angle truncation bounds.

Every log in the cost formulas is ceil(log2 n).  Sanders et al. and Bausch
rows are formulas only; no circuits exist for them here.
"""
from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .circuit import ceil_log2
from .simulator import simulate
from .standard import build_prepare_A, ry_angles

COST_ALGORITHMS = ("sanders", "bausch", "standard_lcu", "modified_lcu")

_ADDITIONAL_NOTES = {
    "sanders": "additional qubits as reported for the comparator variant with n+2 ancillas",
    "bausch": "phase-kickback oracle cost; sqrt(SWAP) gates build the gradient state",
    "standard_lcu": "additional = m control + (m-1) ladder ancillas; the flag qubit is not included",
    "modified_lcu": ("additional = (n+1) control + flag; cnot counts 2n CX plus the 2n CZ left after "
                     "lowering each controlled-H to ry.cz.ry"),
}


@dataclass(frozen=True)
class CostRow:
    algorithm: str
    n: int
    additional_qubits: int
    toffoli: int
    cnot: int | None
    sqrt_swap: int | None
    note: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class ReflectionCostRow:
    algorithm: str
    n: int
    ancillas: int
    toffoli_oracle: int
    toffoli_diffusion: int
    note: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


def _check(algorithm: str, n: int):
    if algorithm not in COST_ALGORITHMS:
        raise ValueError(f"algorithm must be one of {COST_ALGORITHMS}, got {algorithm!r}")
    if n < 2:
        raise ValueError("cost formulas need n >= 2")


def cost_table(algorithm: str, n: int) -> CostRow:
    """Transduction cost row (additional qubits, Toffoli, CNOT, sqrt SWAP)."""
    _check(algorithm, n)
    lg = ceil_log2(n)
    if algorithm == "sanders":
        values = (n + 2, 2 * n - 1, 4 * n - 3, None)
    elif algorithm == "bausch":
        values = (lg, 2 * n * lg, None, n)
    elif algorithm == "standard_lcu":
        values = (2 * lg - 1, 3 * n - 4, n - 2, None)
    else:
        values = (n + 2, n, 4 * n, None)
    return CostRow(algorithm, n, *values, note=_ADDITIONAL_NOTES[algorithm])


def reflection_cost(algorithm: str, n: int) -> ReflectionCostRow:
    """Per-iteration reflection costs, one k-controlled NOT = 2k-3 Toffolis.

    Values follow the published closed forms even where they go negative for
    the smallest n.
    """
    _check(algorithm, n)
    lg = ceil_log2(n)
    note = ""
    if algorithm == "sanders":
        values = (2 * n - 3, 2 * n - 3, 4 * n - 3)
    elif algorithm == "bausch":
        values = (n + lg - 3, 2 * lg - 5, 2 * n + 2 * lg - 5)
    elif algorithm == "standard_lcu":
        values = (n, 2 * lg - 3, 2 * n + 2 * lg - 3)
        note = ("oracle entry kept as published; a (log n + 1)-controlled Z at 2k-3 Toffolis "
                "would give 2 log n - 1")
    else:
        values = (2 * n - 1, 2 * n - 1, 4 * n - 1)
    if min(values) < 0:
        note = (note + "; " if note else "") + "closed form is negative at this n"
    return ReflectionCostRow(algorithm, n, *values, note=note)


# Angle truncation -----------------------------------------------------------

@dataclass(frozen=True)
class ErrorBound:
    n: int
    m: int
    k: int
    eps_zero: float
    eps_top: float
    eps_x: float

    def as_dict(self) -> dict:
        return asdict(self)


def angle_truncation_bounds(n: int, k: int) -> ErrorBound:
    """Worst-case amplitude errors when each theta_i / pi is floored to k bits."""
    if n < 2:
        raise ValueError("bounds need n >= 2")
    if k < 1:
        raise ValueError("angle precision must be at least one bit")
    m = ceil_log2(n)
    lm = ceil_log2(m)
    return ErrorBound(
        n=n, m=m, k=k,
        eps_zero=2.0 ** (-k + 2 + lm),
        eps_top=2.0 ** (-k + 2 - (m - 2)),
        eps_x=2.0 ** (-k + 5 + lm),
    )


def required_angle_bits(n: int) -> int:
    """Angle bits that keep the transduced amplitude error below 2**-n."""
    if n < 2:
        raise ValueError("need n >= 2")
    return n + 5 + ceil_log2(ceil_log2(n))


@dataclass(frozen=True)
class MeasuredAngleError:
    n: int
    k: int | None
    zero_exact: float
    zero_truncated: float
    top_exact: float
    top_truncated: float
    eps_x: float

    @property
    def eps_zero(self) -> float:
        return abs(self.zero_truncated - self.zero_exact)

    @property
    def eps_top(self) -> float:
        return abs(self.top_exact - self.top_truncated)

    def as_dict(self) -> dict:
        out = asdict(self)
        out.update(eps_zero=self.eps_zero, eps_top=self.eps_top)
        return out


def empirical_angle_error(n: int, k: int | None) -> MeasuredAngleError:
    """Simulate the control-state preparation with exact and floored angles.

    ``eps_x`` sums |a * |amp_i|^2 - 2**-(i+1)| over the n used coefficients,
    i.e. the error of the effective LCU weights once the common factor a
    is divided out.  ``k=None`` skips truncation.
    """
    if n < 2 or n & (n - 1):
        raise ValueError(f"n must be a power of two >= 2, got {n}")
    m = ceil_log2(n)
    if m > 6:
        raise ValueError("empirical check is limited to m <= 6")
    exact_angles = ry_angles(n)
    trunc_angles = exact_angles if k is None else exact_angles.truncated(k)
    exact = simulate(build_prepare_A(n, angles=exact_angles)).amplitudes.real
    trunc = simulate(build_prepare_A(n, angles=trunc_angles)).amplitudes.real
    a = exact_angles.normalization
    weights = 2.0 ** -(np.arange(n) + 1)
    eps_x = float(np.sum(np.abs(a * trunc[:n] ** 2 - weights)))
    top = (1 << m) - 1
    return MeasuredAngleError(n, k, float(exact[0]), float(trunc[0]),
                              float(exact[top]), float(trunc[top]), eps_x)
