"""Tests for the non-Markovian damping channel and WM/WMR operations."""
import math

import numpy as np
import pytest
from pydantic import ValidationError

from src.core.errors import DegenerateOutcomeError, InvalidArgumentError, RegimeError
from src.core.linalg import adjoint
from src.quantum.channel import (
    Qubit,
    Regime,
    ReservoirParams,
    amplitude_damp,
    classify_regime,
    damping_kraus,
    decay_factor,
    first_zero_time,
    measure_reverse,
    weak_measure,
)
from src.quantum.qstate import basis_state, to_x_params, validate, werner, x_matrix


@pytest.fixture
def reservoir():
    """Default reservoir: gamma0 = 1, lambda = 0.1."""
    return ReservoirParams()


def test_reservoir_defaults_and_alias():
    """Test reservoir defaults and the "lambda" alias."""
    res = ReservoirParams(**{"lambda": 0.3})
    assert res.lam == 0.3
    assert res.gamma0 == 1.0
    assert ReservoirParams().regime is Regime.NON_MARKOVIAN


def test_reservoir_rejects_non_positive_rates():
    """Test that non-positive rates are rejected."""
    with pytest.raises(ValidationError):
        ReservoirParams(gamma0=0.0)
    with pytest.raises(ValidationError):
        ReservoirParams(lam=-0.1)


def test_classify_regime():
    """Regime follows lambda against 2*gamma0."""
    assert classify_regime(ReservoirParams(lam=0.5)) is Regime.NON_MARKOVIAN
    assert classify_regime(ReservoirParams(lam=2.0)) is Regime.CRITICAL
    assert classify_regime(ReservoirParams(lam=3.0)) is Regime.MARKOVIAN


def test_decay_factor_anchors(reservoir):
    """G(0) = 1 exactly and G(1) from the closed form."""
    assert decay_factor(reservoir, 0.0) == 1.0
    assert decay_factor(reservoir, 1.0) == pytest.approx(0.9524059, abs=1e-7)


def test_first_zero_time(reservoir):
    """First zero at t = 2 (pi - atan(d / lambda)) / d, about 8.2420."""
    d = math.sqrt(0.19)
    expected = 2.0 * (math.pi - math.atan(d / 0.1)) / d
    t0 = first_zero_time(reservoir)
    assert t0 == pytest.approx(expected, abs=1e-9)
    assert t0 == pytest.approx(8.2417, abs=1e-3)
    assert decay_factor(reservoir, t0) < 1e-20


def test_decay_factor_is_not_monotone(reservoir):
    """Memory effects make G rise again after its first zero."""
    values = np.array([decay_factor(reservoir, t) for t in np.linspace(0.0, 30.0, 601)])
    steps = np.diff(values)
    assert np.any(steps > 0)
    assert np.any(steps < 0)
    assert np.all((values >= 0.0) & (values <= 1.0))


def test_decay_factor_rejects_negative_time(reservoir):
    """Test that negative times raise."""
    with pytest.raises(InvalidArgumentError):
        decay_factor(reservoir, -0.1)


def test_decay_factor_regime_errors():
    """Critical point always fails; Markovian only with the flag."""
    with pytest.raises(RegimeError):
        decay_factor(ReservoirParams(lam=2.0), 1.0)
    markovian = ReservoirParams(lam=3.0)
    with pytest.raises(RegimeError):
        decay_factor(markovian, 1.0)
    values = [decay_factor(markovian, t, allow_markovian=True) for t in (0.0, 1.0, 5.0, 50.0)]
    assert values[0] == pytest.approx(1.0)
    assert all(a > b for a, b in zip(values, values[1:]))
    assert values[-1] >= 0.0


def test_first_zero_requires_non_markovian():
    """G_t has no zeros outside the non-Markovian regime."""
    with pytest.raises(RegimeError):
        first_zero_time(ReservoirParams(lam=3.0))


def test_damping_kraus_completeness():
    """K0'K0 + K1'K1 = I for any survival g."""
    for g in (0.0, 0.3, 1.0):
        k0, k1 = damping_kraus(g)
        assert np.allclose(adjoint(k0) @ k0 + adjoint(k1) @ k1, np.eye(2))
    with pytest.raises(InvalidArgumentError):
        damping_kraus(1.5)


def test_amplitude_damp_limits():
    """g = 1 is the identity; g = 0 relaxes the damped qubit to |0>."""
    rho = werner(0.8)
    assert np.allclose(amplitude_damp(rho, Qubit.A, 1.0).mat, rho.mat)
    x = to_x_params(amplitude_damp(rho, Qubit.A, 0.0))
    assert x.rho33 == pytest.approx(0.0)
    assert x.rho44 == pytest.approx(0.0)
    both = to_x_params(amplitude_damp(rho, Qubit.BOTH, 0.0))
    assert both.rho11 == pytest.approx(1.0)


def test_channel_outputs_are_valid_states(random_x_states):
    """Every operation maps states to states."""
    for x in random_x_states(20):
        rho = x_matrix(x)
        for target in (Qubit.A, Qubit.B, Qubit.BOTH):
            assert validate(amplitude_damp(rho, target, 0.37)).ok()
            assert validate(weak_measure(rho, target, 0.6).state).ok()
            assert validate(measure_reverse(rho, target, 0.6).state).ok()


def test_weak_measure_success_probability():
    """On Werner states WM on A succeeds with probability 1 - m/2."""
    result = weak_measure(werner(0.5), Qubit.A, 0.4)
    assert result.success_prob == pytest.approx(0.8)
    assert weak_measure(werner(0.5), Qubit.A, 0.0).success_prob == pytest.approx(1.0)


def test_matched_reversal_restores_state(random_x_states):
    """WM followed by WMR of equal strength is the identity when nothing decays."""
    for x in random_x_states(20):
        rho = x_matrix(x)
        for target in (Qubit.A, Qubit.BOTH):
            measured = weak_measure(rho, target, 0.7)
            restored = measure_reverse(measured.state, target, 0.7)
            assert np.allclose(restored.state.mat, rho.mat, atol=1e-12)


def test_degenerate_outcome():
    """Reversing |00> at mr -> 1 leaves nothing to post-select."""
    with pytest.raises(DegenerateOutcomeError):
        measure_reverse(basis_state("00"), Qubit.A, 1.0 - 1e-16)


@pytest.mark.parametrize("strength", [-0.1, 1.0])
def test_strength_out_of_range(strength):
    """Test that strengths outside [0, 1) are rejected."""
    with pytest.raises(InvalidArgumentError):
        weak_measure(werner(0.5), Qubit.A, strength)
    with pytest.raises(InvalidArgumentError):
        measure_reverse(werner(0.5), Qubit.A, strength)
