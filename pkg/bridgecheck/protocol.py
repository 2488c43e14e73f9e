"""
Adversarial Sparsification Protocol.

Runs K independent trials per (instance, strategy, rho), each of which
sparsifies the connected template graph and records whether the result is
still connected and its relative spectral error. Aggregates connectivity
rate and RSE mean/std per strategy, and sweeps the bridge thickness k for
the frequency-controlled phase transition.

Seeding:
    Trial ``i`` of a run draws from ``numpy.random.default_rng(mix_seed(base_seed, i))``.
    ``mix_seed`` is the splitmix64 finaliser applied to
    ``base_seed + (i + 1) * 0x9E3779B97F4A7C15 (mod 2**64)``:

        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9  (mod 2**64)
        z = (z ^ (z >> 27)) * 0x94D049BB133111EB  (mod 2**64)
        z =  z ^ (z >> 31)

    Every strategy of a run sees the same stream for trial ``i``, results
    are collected by trial index, and aggregation happens afterwards, so the
    output does not depend on the number of worker processes.
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from functools import partial
from typing import Iterable, List, NamedTuple, Optional, Sequence

import numpy as np

from .config import settings
from .graph import GeneratedInstance, build_instance, gen_visible_barbell, is_connected
from .models import PhasePoint, ProtocolConfig, TrialStats
from .sparsify import STRATEGY_NAMES, Strategy, StrategyTag, sparsify
from .spectral import ResistanceMap, fiedler_value, relative_spectral_error, weight_map

logger = logging.getLogger(__name__)

MASK64 = (1 << 64) - 1
GOLDEN_GAMMA = 0x9E3779B97F4A7C15

# Fixed-instance experiments understood by run_experiment
EXPERIMENTS = ("barbell", "chain")

# Expected Random connectivity; outside these bands we only warn
RANDOM_RATE_BANDS = {"barbell": (0.35, 0.60), "chain": (0.30, 0.65)}


class TrialOutcome(NamedTuple):
    connected: bool
    rse: float


def mix_seed(base_seed: int, trial_index: int) -> int:
    """Derive the 64-bit seed of one trial (splitmix64 finaliser)."""
    z = (int(base_seed) + (int(trial_index) + 1) * GOLDEN_GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def run_trial(
    inst: GeneratedInstance,
    rmap: ResistanceMap,
    strategy: Strategy,
    rho: float,
    trial_index: int,
    base_seed: int,
    reference_fiedler: Optional[float] = None,
) -> TrialOutcome:
    """
    One sparsification trial.

    Args:
        inst: Instance with a connected template graph
        rmap: Resistance map of ``inst.graph``
        strategy: Scoring strategy
        rho: Target density in (0, 1]
        trial_index: Index of the trial within the run
        base_seed: 64-bit base seed of the run
        reference_fiedler: Precomputed lambda_2 of the template graph

    Returns:
        TrialOutcome: (connected, rse) of the sparsified graph
    """
    rng = np.random.default_rng(mix_seed(base_seed, trial_index))
    h = sparsify(inst, rmap, strategy, rho, rng)
    connected = is_connected(h)
    rse = relative_spectral_error(inst.graph, h, reference_fiedler=reference_fiedler)
    return TrialOutcome(connected=connected, rse=rse)


def aggregate_trials(tag: StrategyTag, outcomes: Sequence[TrialOutcome]) -> TrialStats:
    """
    Connectivity rate and RSE mean / sample std (K-1) over the outcomes.

    The std is 0 when K = 1 or when every trial has the same RSE.
    """
    if not outcomes:
        raise ValueError("Cannot aggregate zero trials")
    k = len(outcomes)
    connected = sum(1 for outcome in outcomes if outcome.connected)
    rse = np.array([outcome.rse for outcome in outcomes], dtype=np.float64)
    if k == 1 or np.all(rse == rse[0]):
        rse_mean, rse_std = float(rse[0]), 0.0
    else:
        rse_mean, rse_std = float(rse.mean()), float(rse.std(ddof=1))
    return TrialStats(
        strategy=tag,
        connectivity_rate=connected / k,
        rse_mean=rse_mean,
        rse_std=rse_std,
        trials=k,
    )


def _run_trials(
    trial: partial,
    trials: int,
    executor: Optional[ProcessPoolExecutor],
    jobs: int,
) -> List[TrialOutcome]:
    indices: Iterable[int] = range(trials)
    if executor is None:
        return [trial(i) for i in indices]
    chunksize = max(1, trials // (jobs * 4))
    return list(executor.map(trial, indices, chunksize=chunksize))


def run_protocol(
    inst: GeneratedInstance,
    config: ProtocolConfig,
    rmap: Optional[ResistanceMap] = None,
) -> List[TrialStats]:
    """
    Run K trials per configured strategy on ``inst``.

    Args:
        inst: Instance with a connected template graph
        config: Protocol configuration
        rmap: Precomputed resistance map; computed with ``config.lam`` if None

    Returns:
        List[TrialStats]: one entry per strategy, in ``config.strategies`` order

    Raises:
        DomainError: the template graph is disconnected
    """
    if rmap is None:
        rmap = weight_map(inst.graph, config.lam)
    reference = fiedler_value(inst.graph)

    executor = ProcessPoolExecutor(max_workers=config.jobs) if config.jobs > 1 else None
    results = []
    try:
        for tag in config.strategies:
            strategy = Strategy(tag=tag, lam=config.lam)
            trial = partial(
                run_trial,
                inst,
                rmap,
                strategy,
                config.rho,
                base_seed=config.base_seed,
                reference_fiedler=reference,
            )
            outcomes = _run_trials(trial, config.trials, executor, config.jobs)
            stats = aggregate_trials(tag, outcomes)
            logger.debug(
                f"{inst.name} / {STRATEGY_NAMES[tag]}: "
                f"connected {stats.connected_trials}/{stats.trials}, "
                f"rse={stats.rse_mean:.3f}±{stats.rse_std:.3f}"
            )
            results.append(stats)
    finally:
        if executor is not None:
            executor.shutdown()
    return results


def run_experiment(name: str, config: ProtocolConfig) -> List[TrialStats]:
    """
    Fixed-instance experiment on the built-in ``barbell`` or ``chain`` graph.
    """
    inst = build_instance(name)
    started = time.perf_counter()
    results = run_protocol(inst, config)
    logger.info(
        f"Experiment {name}: n={inst.graph.n}, m={inst.graph.m}, rho={config.rho}, "
        f"K={config.trials} finished in {time.perf_counter() - started:.1f}s"
    )
    low, high = RANDOM_RATE_BANDS.get(name, (0.0, 1.0))
    for stats in results:
        if stats.strategy is StrategyTag.RANDOM and not low <= stats.connectivity_rate <= high:
            logger.warning(
                f"Random connectivity {stats.connectivity_rate:.3f} on {name} is outside "
                f"the expected band [{low}, {high}]"
            )
    return results


def run_phase_sweep(
    clique_size: int,
    k_values: Sequence[int],
    config: ProtocolConfig,
) -> List[PhasePoint]:
    """
    Frequency-controlled phase transition.

    For each thickness ``k`` the visible barbell (bridge P_freq = min(1, k/4))
    is sparsified at ``config.rho`` by the Standard and Weighted strategies.

    Args:
        clique_size: Size of both cliques
        k_values: Bridge thicknesses to evaluate (non-empty)
        config: Protocol configuration; its strategies are replaced by
            Standard and Weighted

    Returns:
        List[PhasePoint]: one point per ``k``, in input order
    """
    if not k_values:
        raise ValueError("k_values must not be empty")
    sweep_config = config.model_copy(
        update={"strategies": (StrategyTag.STANDARD, StrategyTag.WEIGHTED)}
    )
    # Structure (hence R_eff) is identical for every k
    rmap = None
    points = []
    for k in k_values:
        inst = gen_visible_barbell(clique_size, k)
        if rmap is None:
            rmap = weight_map(inst.graph, config.lam)
        stats = run_protocol(inst, sweep_config, rmap=rmap)
        bridge_freq = inst.freq[inst.bridge_list[0]]
        logger.debug(
            f"Phase sweep k={k} (bridge freq {bridge_freq:.2f}): "
            + ", ".join(f"{s.strategy.value}={s.connectivity_rate:.3f}" for s in stats)
        )
        points.append(PhasePoint(k=k, bridge_freq=bridge_freq, stats=stats))
    return points


EXPERIMENT_RHO = {
    "barbell": settings.BARBELL_RHO,
    "chain": settings.CHAIN_RHO,
    "phase": settings.PHASE_RHO,
}


def default_protocol_config(name: str, **overrides) -> ProtocolConfig:
    """ProtocolConfig with the default density of ``name``; None overrides are ignored."""
    values = {"rho": EXPERIMENT_RHO[name]}
    values.update({key: value for key, value in overrides.items() if value is not None})
    return ProtocolConfig(**values)
