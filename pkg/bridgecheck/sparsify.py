"""
Edge-scoring strategies and budgeted top-score selection.

Four strategies score every edge of the template graph:

- Random:   S_e ~ U[0, 1)
- Standard: S_e = P_freq(e)                      (frequency only)
- Weighted: S_e = P_freq(e) + lambda * R_eff(e)  (hybrid)
- Oracle:   S_e = R_eff(e)                       (resistance only)

The top ``budget(rho, m)`` edges are kept. Scores are deterministic per
strategy; the per-call uniform tie-break keys are the only source of
trial-to-trial variation besides the Random strategy's scores.
"""

import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import FrozenSet, List

import numpy as np

from .config import settings
from .errors import InvalidParameterError
from .graph import GeneratedInstance, Graph
from .spectral import ResistanceMap

logger = logging.getLogger(__name__)


class StrategyTag(str, Enum):
    RANDOM = "random"
    STANDARD = "standard"
    WEIGHTED = "weighted"
    ORACLE = "oracle"


# Row labels used in reports and logs
STRATEGY_NAMES = {
    StrategyTag.RANDOM: "Random Sampling",
    StrategyTag.STANDARD: "Standard Diffusion",
    StrategyTag.WEIGHTED: "Weighted Diffusion",
    StrategyTag.ORACLE: "Spectral Oracle",
}

ALL_STRATEGIES = (
    StrategyTag.RANDOM,
    StrategyTag.STANDARD,
    StrategyTag.WEIGHTED,
    StrategyTag.ORACLE,
)


@dataclass(frozen=True)
class Strategy:
    """Scoring strategy; ``lam`` is only read by the Weighted strategy."""

    tag: StrategyTag
    lam: float = settings.DEFAULT_LAMBDA

    def __post_init__(self):
        if self.lam < 0:
            raise InvalidParameterError(f"lambda must be non-negative, got {self.lam}")
        object.__setattr__(self, "tag", StrategyTag(self.tag))

    @property
    def display_name(self) -> str:
        return STRATEGY_NAMES[self.tag]


@dataclass(frozen=True, eq=False)
class ScoredEdges:
    """Scores and per-call tie-break keys, both indexed by edge."""

    scores: np.ndarray
    tiebreak: np.ndarray

    @property
    def m(self) -> int:
        return int(self.scores.shape[0])


def score_edges(
    strategy: Strategy,
    inst: GeneratedInstance,
    rmap: ResistanceMap,
    rng: np.random.Generator,
) -> ScoredEdges:
    """
    Score every edge of ``inst.graph`` under ``strategy``.

    Tie-break keys are drawn first, then (Random only) the scores, so
    strategies scored from equally seeded streams share their keys.
    """
    m = inst.graph.m
    if len(rmap) != m:
        raise InvalidParameterError(f"Resistance map covers {len(rmap)} edges, graph has {m}")
    tiebreak = rng.random(m)
    if strategy.tag is StrategyTag.RANDOM:
        scores = rng.random(m)
    elif strategy.tag is StrategyTag.STANDARD:
        scores = inst.freq.as_array()
    elif strategy.tag is StrategyTag.WEIGHTED:
        scores = inst.freq.as_array() + strategy.lam * rmap.r
    else:
        scores = np.array(rmap.r, dtype=np.float64)
    return ScoredEdges(scores=scores, tiebreak=tiebreak)


def budget(rho: float, m: int) -> int:
    """
    Number of edges kept: floor(rho * m + 0.5), clamped to [1, m].

    Raises:
        InvalidParameterError: rho outside (0, 1] or m < 1
    """
    if not 0.0 < rho <= 1.0:
        raise InvalidParameterError(f"rho must lie in (0, 1], got {rho}")
    if m < 1:
        raise InvalidParameterError(f"Graph must have at least one edge, got m={m}")
    return min(m, max(1, math.floor(rho * m + 0.5)))


def rank_edges(scored: ScoredEdges) -> np.ndarray:
    """
    Edge indices from best to worst under (score, tiebreak).

    Scores are rounded to 9 decimals first so values equal in exact
    arithmetic (e.g. resistances of symmetric clique edges) tie exactly.
    """
    keys = np.round(scored.scores, settings.SCORE_DECIMALS)
    return np.lexsort((scored.tiebreak, keys))[::-1]


def select_top(scored: ScoredEdges, b: int) -> FrozenSet[int]:
    """The ``b`` edges maximal under lexicographic (score, tiebreak)."""
    if not 1 <= b <= scored.m:
        raise InvalidParameterError(f"Budget must lie in 1..{scored.m}, got {b}")
    return frozenset(int(i) for i in rank_edges(scored)[:b])


def sparsify(
    inst: GeneratedInstance,
    rmap: ResistanceMap,
    strategy: Strategy,
    rho: float,
    rng: np.random.Generator,
) -> Graph:
    """Spanning subgraph of ``inst.graph`` with exactly ``budget(rho, m)`` edges."""
    b = budget(rho, inst.graph.m)
    scored = score_edges(strategy, inst, rmap, rng)
    return inst.graph.subgraph(select_top(scored, b))


def generative_gap(inst: GeneratedInstance, rmap: ResistanceMap) -> List[dict]:
    """
    Per-edge frequency versus resistance.

    Bridges sit in the low-frequency / high-resistance corner that a
    frequency-only score never reaches.
    """
    if len(rmap) != inst.graph.m:
        raise InvalidParameterError("Resistance map does not match the instance graph")
    rows = []
    for index, (u, v) in enumerate(inst.graph.edges):
        rows.append(
            {
                "edge_index": index,
                "u": u,
                "v": v,
                "freq": float(inst.freq[index]),
                "r_eff": float(rmap.r[index]),
                "weight": float(rmap.w[index]),
                "is_bridge": index in inst.bridge_edges,
            }
        )
    return rows
