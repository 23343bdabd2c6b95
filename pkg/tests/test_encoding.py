import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from helpers import post_oracle
from lcuprep.circuit import Kind, RegisterLayout
from lcuprep.encoding import AmplitudeSpec, FixedPointWord, build_oracle, dequantize, quantize
from lcuprep.simulator import basis_state, full_unitary, apply, simulate


@pytest.mark.parametrize("value,bits,word", [
    (0.5, 2, 0b10),
    (0.0, 4, 0b0000),
    (0.4472, 4, 0b0111),   # floor(0.4472 * 16) = 7
    (0.999, 3, 0b111),
])
def test_quantize(value, bits, word):
    assert quantize(value, bits).bits == word


@pytest.mark.parametrize("value", [-0.1, 1.0, 1.5])
def test_quantize_out_of_range(value):
    with pytest.raises(ValueError):
        quantize(value, 4)


def test_dequantize():
    assert dequantize(FixedPointWord(0b10, 2)) == 0.5
    assert dequantize(FixedPointWord(0b0111, 4)) == 7 / 16


def test_digits_msb_first():
    assert FixedPointWord(0b0111, 4).digits == (0, 1, 1, 1)


@pytest.mark.parametrize("n", range(1, 9))
def test_round_trip_exhaustive(n):
    for w in range(1 << n):
        assert quantize(dequantize(FixedPointWord(w, n)), n).bits == w


@given(st.floats(0, 1, exclude_max=True), st.floats(0, 1, exclude_max=True), st.integers(1, 12))
def test_quantize_monotone_and_bracketing(v1, v2, n):
    lo, hi = sorted((v1, v2))
    assert quantize(lo, n).bits <= quantize(hi, n).bits
    w = dequantize(quantize(v1, n))
    assert w <= v1 < w + 2.0 ** -n


def test_spec_invariants():
    spec = AmplitudeSpec((0.25, 0.5), 2)
    assert spec.d == 2 and spec.address_qubits == 1
    assert spec.l2_norm == pytest.approx(math.sqrt(0.3125))
    assert np.allclose(spec.target, np.array([1, 2]) / math.sqrt(5))
    with pytest.raises(ValueError, match="power of two"):
        AmplitudeSpec((0.1, 0.2, 0.3), 2)
    with pytest.raises(ValueError, match="zero"):
        AmplitudeSpec((0.0, 0.1), 2)
    with pytest.raises(ValueError):
        AmplitudeSpec((0.5, 1.0), 2)


def test_saturated_word_is_ordinary():
    spec = AmplitudeSpec((1 - 2 ** -3, 0.0), 3)
    assert spec.words[0].bits == 7


def test_oracle_demo_state():
    spec = AmplitudeSpec((0.25, 0.5), 2)
    L = RegisterLayout.standard(1, 2)
    s = simulate(post_oracle(spec, L))
    expected = np.zeros(1 << L.num_qubits)
    # qubits: addr, data0, data1, ctrl, flag
    expected[0b0_01_0_0] = expected[0b1_10_0_0] = 1 / math.sqrt(2)
    assert np.allclose(s.amplitudes, expected, atol=1e-15)


def test_oracle_only_touches_nonzero_addresses():
    spec = AmplitudeSpec((0.7, 0.0, 0.0, 0.0), 3)
    L = RegisterLayout.modified(2, 3)
    oracle = build_oracle(spec, L)
    assert oracle.gates and all(g.kind is Kind.MCX and g.pattern[:2] == (0, 0) for g in oracle.gates)


@pytest.mark.parametrize("d,n", [(1, 2), (2, 3), (4, 2), (4, 4), (8, 3)])
def test_oracle_self_inverse(d, n):
    rng = np.random.default_rng(d * 10 + n)
    spec = AmplitudeSpec(tuple(rng.random(d) * 0.9 + 0.05), n)
    L = RegisterLayout(spec.address_qubits, n, 0, flag=0)
    oracle = build_oracle(spec, L)
    u = full_unitary(oracle + oracle)
    assert np.allclose(u, np.eye(1 << L.num_qubits), atol=1e-12, rtol=0)


def test_oracle_xor_semantics():
    spec = AmplitudeSpec((0.25, 0.75), 2)   # words 01, 11
    L = RegisterLayout(1, 2, 0, flag=0)
    oracle = build_oracle(spec, L)
    for j in range(2):
        for y in range(4):
            out = apply(oracle, basis_state(3, (j << 2) | y))
            word = spec.words[j].bits
            assert out.amplitudes[(j << 2) | (y ^ word)] == 1


def test_oracle_layout_mismatch():
    spec = AmplitudeSpec((0.25, 0.5), 2)
    with pytest.raises(ValueError):
        build_oracle(spec, RegisterLayout.standard(1, 4))
