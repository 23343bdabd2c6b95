"""scikit-learn style front end.

:class:`LCUStatePreparation` treats every row of ``X`` as an amplitude vector
in [0, 1) and transforms it into the normalised state the amplified
circuit prepares on its address register.  It validates input like any other
transformer, so it can sit after a scaler inside a ``Pipeline``.
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_array, check_is_fitted

from .amplification import ALGORITHMS, PipelineConfig, pipeline_layout, run_pipeline
from .encoding import AmplitudeSpec


class LCUStatePreparation(TransformerMixin, BaseEstimator):
    """Black-box state preparation by LCU amplitude transduction.

    Parameters
    ----------
    algorithm : {"standard", "modified"}
        Binary-indexed control register with Ry rotations, or the one-hot
        controlled-H ladder.
    bits : int
        Fixed-point precision n of each amplitude.
    rounds : "auto" or int
        Amplitude amplification rounds; "auto" picks the optimum per row.
    decomposed : bool
        Use the Toffoli/CNOT cascade for the standard kick-back.

    Attributes
    ----------
    n_features_in_ : int
        Number of amplitudes per row (a power of two).
    layout_ : RegisterLayout
        Qubit layout shared by every row.
    """

    def __init__(self, algorithm="standard", bits=8, rounds="auto", decomposed=False):
        self.algorithm = algorithm
        self.bits = bits
        self.rounds = rounds
        self.decomposed = decomposed

    def _check_params(self):
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"algorithm must be one of {ALGORITHMS}, got {self.algorithm!r}")
        if not isinstance(self.bits, (int, np.integer)) or self.bits < 2:
            raise ValueError(f"bits must be an integer >= 2, got {self.bits!r}")

    def _check_X(self, X, reset):
        X = check_array(X, dtype=np.float64)
        if reset:
            self.n_features_in_ = X.shape[1]
        elif X.shape[1] != self.n_features_in_:
            raise ValueError(
                f"X has {X.shape[1]} features, but {type(self).__name__} was fitted with "
                f"{self.n_features_in_}"
            )
        if np.any(X < 0) or np.any(X >= 1):
            raise ValueError("amplitudes must lie in [0, 1)")
        return X

    def fit(self, X, y=None):
        self._check_params()
        X = self._check_X(X, reset=True)
        d = X.shape[1]
        if d & (d - 1):
            raise ValueError(f"number of amplitudes must be a power of two, got {d}")
        self.layout_ = pipeline_layout(
            AmplitudeSpec((0.5,) * d, self.bits), self.algorithm, self.decomposed
        )
        return self

    def _run_rows(self, X):
        check_is_fitted(self, "layout_")
        X = self._check_X(X, reset=False)
        for row in X:
            spec = AmplitudeSpec(tuple(row), self.bits)
            config = PipelineConfig(spec, self.algorithm, self.rounds, self.decomposed)
            yield spec, run_pipeline(config, self.layout_)

    def transform(self, X):
        """Prepared address-register amplitudes, one row per input row."""
        return np.vstack([res.address_state.real for _, res in self._run_rows(X)])

    def success_probability(self, X):
        """Simulated probability of the control = 0, flag = 1 outcome per row."""
        return np.array([res.success_probability for _, res in self._run_rows(X)])

    def score(self, X, y=None):
        """Mean fidelity between prepared states and the unquantized targets."""
        X = check_array(X, dtype=np.float64)
        prepared = self.transform(X)
        targets = X / np.linalg.norm(X, axis=1, keepdims=True)
        return float(np.mean(np.sum(prepared * targets, axis=1) ** 2))

    def get_feature_names_out(self, input_features=None):
        check_is_fitted(self, "n_features_in_")
        return np.array([f"amplitude{j}" for j in range(self.n_features_in_)], dtype=object)
