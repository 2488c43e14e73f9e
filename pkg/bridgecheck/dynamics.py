"""
Gradient-starvation simulator.

Models a single logit theta predicting a rare edge whose label is
Bernoulli(epsilon). Mini-batch SGD on the cross-entropy drives
p = sigmoid(theta) to the marginal frequency epsilon; multiplying the
positive-class gradient by omega moves the stationary point to
omega * epsilon / ((1 - epsilon) + omega * epsilon).
"""

import logging
import math
from typing import Sequence, Tuple

import numpy as np

from .errors import InvalidParameterError
from .models import DynamicsConfig, DynamicsTrace

logger = logging.getLogger(__name__)

# |final_p - fixed_point| above this is logged as a warning
FIXED_POINT_WARN_GAP = 0.05

# recorded p_t stays this far inside (0, 1); large omega saturates sigmoid in float64
PROB_MARGIN = 1e-12


def sigmoid(theta: float) -> float:
    if theta >= 0:
        return 1.0 / (1.0 + math.exp(-theta))
    z = math.exp(theta)
    return z / (1.0 + z)


def sgd_step(theta: float, batch_labels: Sequence[float], omega: float, eta: float) -> float:
    """
    One SGD step on the positively weighted cross-entropy.

    Per-sample gradient g_i = (sigmoid(theta) - y_i) * (omega if y_i = 1
    else 1); the update uses the batch mean.
    """
    labels = np.asarray(batch_labels, dtype=np.float64)
    if labels.size == 0:
        raise InvalidParameterError("Batch must contain at least one label")
    if omega <= 0 or eta <= 0:
        raise InvalidParameterError(f"omega and eta must be positive, got {omega}, {eta}")
    p = sigmoid(theta)
    weights = np.where(labels == 1.0, omega, 1.0)
    grad = (p - labels) * weights
    return theta - eta * float(grad.mean())


def tail_mean(probs: Sequence[float], window: int) -> float:
    """Mean of the last ``window`` entries (all of them if shorter)."""
    values = np.asarray(probs, dtype=np.float64)
    return float(values[-window:].mean())


def fixed_point(epsilon: float, omega: float) -> float:
    """Stationary p of the weighted objective: omega*eps / ((1 - eps) + omega*eps)."""
    if not 0.0 < epsilon < 1.0:
        raise InvalidParameterError(f"epsilon must lie in (0, 1), got {epsilon}")
    if omega <= 0:
        raise InvalidParameterError(f"omega must be positive, got {omega}")
    return omega * epsilon / ((1.0 - epsilon) + omega * epsilon)


def spectral_omega(lam: float, r_eff: float = 1.0) -> float:
    """Positive-class weight equal to the weight-map entry 1 + lam * R_eff."""
    if lam < 0:
        raise InvalidParameterError(f"lambda must be non-negative, got {lam}")
    return 1.0 + lam * r_eff


def run_dynamics(config: DynamicsConfig) -> DynamicsTrace:
    """
    Simulate ``config.steps`` SGD steps from ``theta0``.

    Each step draws ``config.batch`` labels ~ Bernoulli(epsilon) from the
    stream seeded with ``config.seed``.
    """
    rng = np.random.default_rng(config.seed)
    probs = np.empty(config.steps + 1, dtype=np.float64)
    theta = config.theta0
    probs[0] = sigmoid(theta)
    for step in range(config.steps):
        labels = (rng.random(config.batch) < config.epsilon).astype(np.float64)
        theta = sgd_step(theta, labels, config.omega, config.eta)
        probs[step + 1] = sigmoid(theta)

    np.clip(probs, PROB_MARGIN, 1.0 - PROB_MARGIN, out=probs)
    final_p = tail_mean(probs, config.tail_window)
    target = fixed_point(config.epsilon, config.omega)
    if abs(final_p - target) > FIXED_POINT_WARN_GAP:
        logger.warning(
            f"Trace (omega={config.omega}) ended at p={final_p:.4f}, "
            f"analytic fixed point is {target:.4f}"
        )
    return DynamicsTrace(omega=config.omega, probs=probs.tolist(), final_p=final_p)


def run_dynamics_pair(config: DynamicsConfig) -> Tuple[DynamicsTrace, DynamicsTrace]:
    """
    Standard (omega = 1) and Weighted (omega = config.omega) traces.

    Both traces consume the same label stream.
    """
    standard = run_dynamics(config.model_copy(update={"omega": 1.0}))
    weighted = run_dynamics(config)
    logger.info(
        f"Dynamics eps={config.epsilon}, omega={config.omega}: "
        f"standard p={standard.final_p:.4f}, weighted p={weighted.final_p:.4f}"
    )
    return standard, weighted
