import math

import numpy as np
import pytest

from helpers import DEMO_TARGET, random_spec, run_transduction, success_amplitudes
from lcuprep.amplification import success_constraints
from lcuprep.circuit import RegisterLayout, count
from lcuprep.modified import (
    build_kickback_modified, build_prepare_gradient, build_prepare_lcu_coefficients,
    build_transduce_modified, lcu_ladder_angles, success_probability,
)
from lcuprep.simulator import postselect, simulate


def one_hot(width, i):
    return 1 << (width - 1 - i)


def test_gradient_n1():
    s = simulate(build_prepare_gradient(1)).amplitudes.reshape(-1)
    expected = np.zeros(4)
    expected[0b10] = expected[0b01] = 1 / math.sqrt(2)
    assert np.allclose(s, expected, atol=1e-15)


def test_gradient_n2():
    s = simulate(build_prepare_gradient(2)).amplitudes.reshape(-1)
    expected = np.zeros(8)
    expected[0b100] = 1 / math.sqrt(2)
    expected[0b010] = expected[0b001] = 0.5
    assert np.allclose(s, expected, atol=1e-15)


@pytest.mark.parametrize("n", [1, 3, 5, 8])
def test_gradient_is_one_hot(n):
    s = simulate(build_prepare_gradient(n)).amplitudes.reshape(-1)
    expected = np.zeros(1 << (n + 1))
    for i in range(n):
        expected[one_hot(n + 1, i)] = 2.0 ** (-(i + 1) / 2)
    expected[one_hot(n + 1, n)] = 2.0 ** (-n / 2)
    assert np.allclose(s, expected, atol=1e-12)


@pytest.mark.parametrize("n", [2, 4, 8, 16])
def test_toffoli_count_equals_n(n):
    L = RegisterLayout.modified(0, n)
    c = count(build_kickback_modified(n, L))
    assert c.toffoli == n and c.mcx_by_arity == {}


def test_demo(demo_spec):
    t = build_transduce_modified(demo_spec)
    assert t.layout.num_qubits == 1 + 2 + 3 + 1
    ps = postselect(run_transduction(demo_spec, t), success_constraints(t.layout))
    assert ps.probability == pytest.approx(5 / 32, abs=1e-12)
    assert success_probability(demo_spec) == pytest.approx(5 / 32, abs=1e-15)
    amps = success_amplitudes(ps.collapsed, demo_spec, t.layout)
    assert abs(np.vdot(DEMO_TARGET, amps)) ** 2 == pytest.approx(1.0, abs=1e-12)


@pytest.mark.parametrize("d,n", [(2, 2), (2, 5), (4, 3), (8, 2), (8, 4)])
def test_amplitude_law(d, n):
    rng = np.random.default_rng(7 * d + n)
    spec = random_spec(rng, d, n)
    t = build_transduce_modified(spec)
    amps = success_amplitudes(run_transduction(spec, t), spec, t.layout)
    words = np.floor(np.array(spec.values) * 2 ** n) / 2 ** n
    assert np.allclose(amps, words / math.sqrt(d), atol=1e-10, rtol=0)


def test_layout_checks():
    with pytest.raises(ValueError):
        build_kickback_modified(3, RegisterLayout.modified(0, 2))
    with pytest.raises(ValueError):
        build_prepare_gradient(0)


@pytest.mark.parametrize("coefficients", [
    [1, 1],
    [1, 2, 3],
    [0.5, 0.25, 0.125, 0.125],
    [3, 1, 4, 1, 5],
])
def test_lcu_coefficient_ladder(coefficients):
    c = build_prepare_lcu_coefficients(coefficients)
    s = simulate(c).amplitudes.reshape(-1)
    w = len(coefficients)
    expected = np.zeros(1 << w)
    total = sum(coefficients)
    for i, a in enumerate(coefficients):
        expected[one_hot(w, i)] = math.sqrt(a / total)
    assert np.allclose(s, expected, atol=1e-12)


def test_lcu_coefficients_reproduce_gradient():
    n = 4
    coeffs = [2.0 ** -(i + 1) for i in range(n)] + [2.0 ** -n]
    a = simulate(build_prepare_lcu_coefficients(coeffs)).amplitudes
    b = simulate(build_prepare_gradient(n)).amplitudes
    assert np.allclose(a, b, atol=1e-12)


def test_lcu_angles_reject_bad_input():
    with pytest.raises(ValueError):
        lcu_ladder_angles([])
    with pytest.raises(ValueError):
        lcu_ladder_angles([1, 0])
