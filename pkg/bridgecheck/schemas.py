"""
Pydantic schemas for files written by the command-line front end.

These schemas define the on-disk contract of BRIDGEcheck:

- ResultRow: one row of a results table (CSV header
  ``experiment,strategy,k,rho,lambda,trials,connectivity_rate,rse_mean,rse_std,seed``,
  JSON mirror with identical field names)
- TraceRow: one step of the side-by-side dynamics trace
- GapRow: one edge of the frequency-versus-resistance table
- RunManifest: the reproducibility envelope stored next to every result file
"""

from typing import Any, Dict, List, Optional

from pydantic import BaseModel, ConfigDict, Field

from .models import TrialStats
from .sparsify import StrategyTag


# ============================================================================
# Results tables
# ============================================================================
class ResultRow(BaseModel):
    """
    One (strategy, k) row of a results table.

    ``k`` is empty for the fixed-instance experiments and set for the phase
    sweep.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True)

    experiment: str = Field(..., description="barbell, chain or phase")
    strategy: StrategyTag = Field(..., description="Scoring strategy")
    k: Optional[int] = Field(None, ge=1, description="Bridge thickness (phase sweep only)")
    rho: float = Field(..., gt=0, le=1, description="Target density")
    lam: float = Field(..., ge=0, alias="lambda", description="Resistance weight lambda")
    trials: int = Field(..., ge=1, description="Trials K")
    connectivity_rate: float = Field(..., ge=0, le=1, description="Fraction of connected trials")
    rse_mean: float = Field(..., ge=0, description="Mean relative spectral error")
    rse_std: float = Field(..., ge=0, description="Sample std of the RSE")
    seed: int = Field(..., ge=0, description="Base seed")

    @classmethod
    def from_stats(
        cls,
        experiment: str,
        stats: TrialStats,
        *,
        rho: float,
        lam: float,
        seed: int,
        k: Optional[int] = None,
    ) -> "ResultRow":
        return cls(
            experiment=experiment,
            strategy=stats.strategy,
            k=k,
            rho=rho,
            lam=lam,
            trials=stats.trials,
            connectivity_rate=stats.connectivity_rate,
            rse_mean=stats.rse_mean,
            rse_std=stats.rse_std,
            seed=seed,
        )

    def to_stats(self) -> TrialStats:
        return TrialStats(
            strategy=self.strategy,
            connectivity_rate=self.connectivity_rate,
            rse_mean=self.rse_mean,
            rse_std=self.rse_std,
            trials=self.trials,
        )


RESULT_COLUMNS = [
    "experiment",
    "strategy",
    "k",
    "rho",
    "lambda",
    "trials",
    "connectivity_rate",
    "rse_mean",
    "rse_std",
    "seed",
]


# ============================================================================
# Dynamics trace and generative gap
# ============================================================================
class TraceRow(BaseModel):
    """One SGD step of the Standard and Weighted traces."""

    step: int = Field(..., ge=0)
    p_standard: float = Field(..., gt=0, lt=1)
    p_weighted: float = Field(..., gt=0, lt=1)


TRACE_COLUMNS = ["step", "p_standard", "p_weighted"]


class GapRow(BaseModel):
    """Per-edge frequency versus effective resistance."""

    edge_index: int = Field(..., ge=0)
    u: int = Field(..., ge=0)
    v: int = Field(..., ge=0)
    freq: float = Field(..., ge=0, le=1, description="P_freq(e)")
    r_eff: float = Field(..., gt=0, description="R_eff(e)")
    weight: float = Field(..., ge=1, description="W_e = 1 + lambda * R_eff(e)")
    is_bridge: bool = Field(..., description="Designated structural bridge")


GAP_COLUMNS = ["edge_index", "u", "v", "freq", "r_eff", "weight", "is_bridge"]


# ============================================================================
# Reproducibility envelope
# ============================================================================
class RunManifest(BaseModel):
    """
    Everything needed to re-run a command and reproduce its result bytes.

    ``config`` holds the fully resolved configuration with every default
    materialised, except the worker count, which never changes results.
    Manifests carry no timestamps, so repeated runs write identical bytes.
    """

    command: str = Field(..., description="Command name, e.g. 'experiment barbell'")
    experiment: Optional[str] = Field(None, description="Experiment name, if any")
    config: Dict[str, Any] = Field(..., description="Resolved configuration")
    seed: int = Field(..., ge=0, description="Base seed")
    tool_version: str = Field(..., description="BRIDGEcheck version")
    output_format: str = Field("csv", pattern="^(csv|json)$")
    outputs: List[str] = Field(default_factory=list, description="Result file names")
