"""Black-box quantum state preparation by LCU amplitude transduction."""
from .amplification import (
    PipelineConfig, PipelineResult, build_good_reflection, build_initial_reflection,
    build_pipeline, optimal_rounds, run_pipeline, sample,
)
from .analysis import (
    CostRow, ErrorBound, ReflectionCostRow, angle_truncation_bounds, cost_table,
    empirical_angle_error, reflection_cost, required_angle_bits,
)
from .circuit import Circuit, Gate, GateCounts, Kind, RegisterLayout, count, inverse
from .encoding import AmplitudeSpec, FixedPointWord, build_oracle, dequantize, quantize
from .estimator import LCUStatePreparation
from .modified import (
    build_kickback_modified, build_prepare_gradient, build_prepare_lcu_coefficients,
    build_transduce_modified,
)
from .qasm import export_qasm2, read_qasm2
from .simulator import StateVector, fidelity, full_unitary, init_zero, postselect, simulate
from .standard import (
    RyAngleSet, build_kickback, build_prepare_A, build_transduce_standard, decompose_cascade,
    ry_angles,
)

__version__ = "0.1.0"
