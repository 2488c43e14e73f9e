"""
Tests for the gradient-starvation simulator.
"""

import logging
import math

import pytest
from pydantic import ValidationError

from bridgecheck.dynamics import (
    PROB_MARGIN,
    fixed_point,
    run_dynamics,
    run_dynamics_pair,
    sgd_step,
    sigmoid,
    spectral_omega,
    tail_mean,
)
from bridgecheck.errors import InvalidParameterError
from bridgecheck.models import DynamicsConfig, DynamicsTrace


@pytest.fixture(scope="module")
def default_pair():
    """Standard and Weighted traces with the default hyperparameters."""
    return run_dynamics_pair(DynamicsConfig(seed=42))


def test_sigmoid_is_stable_at_extremes():
    assert sigmoid(0.0) == 0.5
    assert sigmoid(800.0) == 1.0
    assert sigmoid(-800.0) == 0.0
    assert sigmoid(2.0) + sigmoid(-2.0) == pytest.approx(1.0)


def test_sgd_step_weights_positive_gradient():
    """Test one hand-computed step: g = mean((0.5 - 1) * 2, (0.5 - 0) * 1) = -0.25."""
    assert sgd_step(0.0, [1.0, 0.0], omega=2.0, eta=1.0) == pytest.approx(0.25)
    assert sgd_step(0.0, [0.0, 0.0], omega=50.0, eta=0.1) == pytest.approx(-0.05)


def test_sgd_step_rejects_bad_input():
    with pytest.raises(InvalidParameterError):
        sgd_step(0.0, [], omega=1.0, eta=0.1)
    with pytest.raises(InvalidParameterError):
        sgd_step(0.0, [1.0], omega=0.0, eta=0.1)


def test_fixed_point_values():
    assert fixed_point(0.05, 1.0) == pytest.approx(0.05)
    assert fixed_point(0.05, 50.0) == pytest.approx(2.5 / 3.45)
    assert fixed_point(0.05, 50.0) == pytest.approx(0.72464, abs=1e-5)
    with pytest.raises(InvalidParameterError):
        fixed_point(1.0, 50.0)


def test_spectral_omega():
    assert spectral_omega(2.0) == 3.0
    assert spectral_omega(2.0, 0.25) == 1.5
    with pytest.raises(InvalidParameterError):
        spectral_omega(-1.0)


def test_tail_mean():
    assert tail_mean([0.0, 1.0, 2.0, 3.0], 2) == 2.5
    assert tail_mean([1.0, 3.0], 10) == 2.0


def test_standard_trace_collapses_to_marginal_frequency(default_pair):
    standard, _ = default_pair
    assert standard.omega == 1.0
    assert len(standard.probs) == 2001
    assert standard.probs[0] == 0.5
    assert standard.final_p == pytest.approx(0.05, abs=0.01)


def test_weighted_trace_reaches_analytic_fixed_point(default_pair):
    standard, weighted = default_pair
    assert weighted.omega == 50.0
    assert weighted.final_p == pytest.approx(fixed_point(0.05, 50.0), abs=0.03)
    assert weighted.final_p / standard.final_p > 10


def test_last_standard_step_near_frequency():
    standard, _ = run_dynamics_pair(DynamicsConfig(seed=7))
    assert standard.probs[-1] == pytest.approx(0.05, abs=0.02)


def test_traces_are_reproducible():
    config = DynamicsConfig(seed=3, steps=300)
    assert run_dynamics(config) == run_dynamics(config)
    assert run_dynamics(config) != run_dynamics(config.model_copy(update={"seed": 4}))


def test_far_from_fixed_point_warns(caplog):
    """Test that a trace stopped long before convergence logs a warning."""
    with caplog.at_level(logging.WARNING, logger="bridgecheck.dynamics"):
        trace = run_dynamics(DynamicsConfig(steps=1, omega=1.0))
    assert trace.final_p > 0.4
    assert any("fixed point" in record.message for record in caplog.records)


@pytest.mark.parametrize(
    "overrides",
    [{"epsilon": 0.0}, {"epsilon": 1.0}, {"omega": 0.5}, {"eta": 0.0}, {"batch": 0}, {"steps": 0}],
)
def test_dynamics_config_validation(overrides):
    with pytest.raises(ValidationError):
        DynamicsConfig(**overrides)


def test_trace_rejects_saturated_probability():
    with pytest.raises(ValidationError, match="outside"):
        DynamicsTrace(omega=1.0, probs=[0.5, 1.0], final_p=0.75)
    assert math.isclose(DynamicsTrace(omega=1.0, probs=[0.5], final_p=0.5).final_p, 0.5)


# ============================================================================
# Convergence grid
# ============================================================================
EPSILONS = (0.05, 0.2, 0.5)
OMEGAS = (1.0, 10.0, 50.0, 200.0)


@pytest.fixture(scope="module")
def final_p_grid():
    """final_p for every (epsilon, omega) with the default seed and schedule."""
    return {
        (epsilon, omega): run_dynamics(DynamicsConfig(epsilon=epsilon, omega=omega)).final_p
        for epsilon in EPSILONS
        for omega in OMEGAS
    }


@pytest.mark.parametrize("epsilon", EPSILONS)
def test_unweighted_sgd_converges_to_frequency(final_p_grid, epsilon):
    assert final_p_grid[(epsilon, 1.0)] == pytest.approx(epsilon, abs=0.02)


@pytest.mark.parametrize("epsilon", EPSILONS)
def test_final_p_increases_with_omega(final_p_grid, epsilon):
    values = [final_p_grid[(epsilon, omega)] for omega in OMEGAS]
    assert all(low < high for low, high in zip(values, values[1:]))


@pytest.mark.parametrize("epsilon", EPSILONS)
@pytest.mark.parametrize("omega", OMEGAS)
def test_simulation_matches_fixed_point(final_p_grid, epsilon, omega):
    assert final_p_grid[(epsilon, omega)] == pytest.approx(fixed_point(epsilon, omega), abs=0.03)


def test_balanced_unweighted_trace_stays_at_one_half():
    trace = run_dynamics(DynamicsConfig(epsilon=0.5, omega=1.0))
    assert trace.final_p == pytest.approx(0.5, abs=0.02)


def test_large_omega_trace_stays_inside_unit_interval():
    """Test that a saturating sigmoid still yields a valid trace."""
    trace = run_dynamics(DynamicsConfig(epsilon=0.5, omega=10000.0, seed=42))
    assert all(PROB_MARGIN <= p <= 1.0 - PROB_MARGIN for p in trace.probs)
    assert 0.99 < trace.final_p < 1.0
