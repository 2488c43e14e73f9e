"""
Application configuration and experiment defaults.

This module provides centralized configuration for BRIDGEcheck: the
default experiment parameters, the numerical tolerances shared by the
spectral and sparsification code, and output formatting.

There are deliberately no environment variables and no config files.
Every run is described completely by its command-line flags, which are
recorded in the run manifest.

Usage:
    from bridgecheck.config import settings

    trials = settings.DEFAULT_TRIALS
"""

from functools import lru_cache
from typing import Tuple


class Settings:
    """
    Centralized application settings.

    All settings are class-level constants and immutable after
    initialization. Command-line overrides never mutate this object; they
    are applied to the pydantic configuration models instead.
    """

    # Reproducibility
    DEFAULT_SEED: int = 42
    DEFAULT_TRIALS: int = 500
    DEFAULT_JOBS: int = 1

    # Spectral weighting (W_e = 1 + lambda * R_eff)
    DEFAULT_LAMBDA: float = 2.0

    # Adversarial instances
    CLIQUE_FREQ: float = 0.95
    BRIDGE_FREQ: float = 0.05
    BARBELL_CLIQUE_SIZE: int = 8
    BARBELL_RHO: float = 0.5
    CHAIN_CLIQUE_SIZES: Tuple[int, ...] = (10, 15, 20)
    CHAIN_RHO: float = 0.6
    PHASE_RHO: float = 0.6
    PHASE_K_MAX: int = 8
    # Bridge frequency reaches 1.0 at k = VISIBILITY_SATURATION
    VISIBILITY_SATURATION: int = 4

    # Gradient-starvation simulator
    DYNAMICS_EPSILON: float = 0.05
    DYNAMICS_OMEGA: float = 50.0
    DYNAMICS_ETA: float = 0.05
    DYNAMICS_BATCH: int = 64
    DYNAMICS_STEPS: int = 2000
    DYNAMICS_THETA0: float = 0.0
    DYNAMICS_TAIL_WINDOW: int = 200

    # Numerical tolerances
    PINV_RTOL: float = 1e-9
    CONNECTIVITY_TOL: float = 1e-8
    SYMMETRY_RTOL: float = 1e-12
    MAX_DENSE_DIM: int = 512
    SCORE_DECIMALS: int = 9

    # Output
    FLOAT_SIG_DIGITS: int = 6
    DUMP_DECIMALS: int = 9
    OUTPUT_DIR: str = "results"
    LOG_FORMAT: str = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"

    def __init__(self):
        """Validate configuration on initialization."""
        if self.VISIBILITY_SATURATION < 1:
            raise ValueError("VISIBILITY_SATURATION must be at least 1")
        if not 0.0 <= self.BRIDGE_FREQ < self.CLIQUE_FREQ <= 1.0:
            raise ValueError("Bridge frequency must be below clique frequency")

    @property
    def float_format(self) -> str:
        """printf-style format used for every numeric table cell."""
        return f"%.{self.FLOAT_SIG_DIGITS}g"


@lru_cache()
def get_settings() -> Settings:
    """
    Get cached settings instance.

    Returns:
        Settings: Cached settings instance
    """
    return Settings()


# Global settings instance for direct import
settings = get_settings()
