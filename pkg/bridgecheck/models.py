"""
Pydantic models for experiment configuration and results.

This module defines the validated data models of BRIDGEcheck:
- Protocol configuration and per-strategy trial statistics
- Phase-sweep points
- Gradient-starvation simulator configuration and traces
- Error reporting

All models are immutable; invariants are enforced by field constraints and
validators, so an invalid override surfaces as ``pydantic.ValidationError``.
"""

from typing import List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .config import settings
from .sparsify import ALL_STRATEGIES, StrategyTag


class ProtocolConfig(BaseModel):
    """Configuration of the adversarial sparsification protocol."""

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    trials: int = Field(settings.DEFAULT_TRIALS, ge=1, description="Trials K per strategy")
    rho: float = Field(settings.BARBELL_RHO, gt=0, le=1, description="Target density")
    lam: float = Field(
        settings.DEFAULT_LAMBDA, ge=0, alias="lambda", description="Resistance weight lambda"
    )
    base_seed: int = Field(
        settings.DEFAULT_SEED, ge=0, lt=2**64, description="64-bit base seed"
    )
    strategies: Tuple[StrategyTag, ...] = Field(
        ALL_STRATEGIES, min_length=1, description="Strategies to evaluate"
    )
    jobs: int = Field(settings.DEFAULT_JOBS, ge=1, description="Worker processes")


class TrialStats(BaseModel):
    """Aggregated outcome of K trials for one strategy."""

    model_config = ConfigDict(frozen=True)

    strategy: StrategyTag = Field(..., description="Scoring strategy")
    connectivity_rate: float = Field(..., ge=0, le=1, description="Fraction of connected trials")
    rse_mean: float = Field(..., ge=0, description="Mean relative spectral error")
    rse_std: float = Field(..., ge=0, description="Sample std (K-1) of the RSE")
    trials: int = Field(..., ge=1, description="Number of trials K")

    @model_validator(mode="after")
    def validate_rate_is_count(self) -> "TrialStats":
        """connectivity_rate * K must be a whole number of trials."""
        count = self.connectivity_rate * self.trials
        if abs(count - round(count)) > 1e-6 * max(1, self.trials):
            raise ValueError(
                f"connectivity_rate {self.connectivity_rate} is not a multiple of 1/{self.trials}"
            )
        return self

    @property
    def connected_trials(self) -> int:
        return int(round(self.connectivity_rate * self.trials))


class PhasePoint(BaseModel):
    """One bridge thickness of the frequency-controlled phase sweep."""

    model_config = ConfigDict(frozen=True)

    k: int = Field(..., ge=1, description="Bridge thickness")
    bridge_freq: float = Field(..., ge=0, le=1, description="Bridge P_freq at this thickness")
    stats: List[TrialStats] = Field(..., description="One entry per evaluated strategy")

    def for_strategy(self, tag: StrategyTag) -> TrialStats:
        for entry in self.stats:
            if entry.strategy == tag:
                return entry
        raise KeyError(tag)


class DynamicsConfig(BaseModel):
    """SGD on a single logit predicting a rare edge."""

    model_config = ConfigDict(frozen=True)

    epsilon: float = Field(settings.DYNAMICS_EPSILON, gt=0, lt=1, description="Target edge frequency")
    omega: float = Field(settings.DYNAMICS_OMEGA, ge=1, description="Positive-class weight")
    eta: float = Field(settings.DYNAMICS_ETA, gt=0, description="Learning rate")
    batch: int = Field(settings.DYNAMICS_BATCH, ge=1, description="Batch size B")
    steps: int = Field(settings.DYNAMICS_STEPS, ge=1, description="SGD steps")
    theta0: float = Field(settings.DYNAMICS_THETA0, description="Initial logit")
    tail_window: int = Field(
        settings.DYNAMICS_TAIL_WINDOW, ge=1, description="Steps averaged for final_p"
    )
    seed: int = Field(settings.DEFAULT_SEED, ge=0, lt=2**64, description="Label stream seed")


class DynamicsTrace(BaseModel):
    """Predicted edge probability p_t = sigmoid(theta_t), t = 0..steps."""

    model_config = ConfigDict(frozen=True)

    omega: float = Field(..., ge=1, description="Positive-class weight used")
    probs: List[float] = Field(..., min_length=1, description="p_t series")
    final_p: float = Field(..., gt=0, lt=1, description="Mean p over the tail window")

    @field_validator("probs")
    @classmethod
    def validate_open_unit_interval(cls, v: List[float]) -> List[float]:
        for step, p in enumerate(v):
            if not 0.0 < p < 1.0:
                raise ValueError(f"p_{step} = {p} is outside (0, 1)")
        return v


class ErrorResponse(BaseModel):
    """Error report printed by the CLI with --json-errors."""

    error: str = Field(..., description="Error class")
    detail: Optional[str] = Field(default=None, description="Detailed error info")
    exit_code: int = Field(..., description="Process exit code")
