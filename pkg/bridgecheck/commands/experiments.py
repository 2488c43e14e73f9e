"""
Experiment commands.

One subcommand per experiment of the empirical study:

- barbell:  4 strategies on 2 x K_8 joined by one bridge
- chain:    4 strategies on the {10, 15, 20} clique chain
- phase:    Standard vs Weighted over bridge thickness k = 1..k_max
- dynamics: side-by-side SGD traces (gradient starvation vs amplification)

Every result file is written together with a manifest holding the fully
resolved configuration, from which ``cmd_replay`` reproduces the result
bytes.
"""

import logging
import shutil
import time
from dataclasses import dataclass, fields
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, List, Optional

from .. import __version__
from ..config import settings
from ..dynamics import run_dynamics_pair, spectral_omega
from ..errors import InvalidParameterError, UsageError
from ..models import DynamicsConfig, ProtocolConfig
from ..protocol import default_protocol_config, run_experiment, run_phase_sweep
from ..schemas import ResultRow, RunManifest
from .export import read_manifest, write_manifest, write_results, write_trace

logger = logging.getLogger(__name__)

EXPERIMENT_NAMES = ("barbell", "chain", "phase", "dynamics")


@dataclass
class ExperimentOverrides:
    """Command-line overrides; None means 'use the default'."""

    trials: Optional[int] = None
    rho: Optional[float] = None
    lam: Optional[float] = None
    seed: Optional[int] = None
    k_max: Optional[int] = None
    jobs: Optional[int] = None
    epsilon: Optional[float] = None
    omega: Optional[float] = None
    steps: Optional[int] = None

    def given(self) -> Dict[str, Any]:
        return {f.name: getattr(self, f.name) for f in fields(self) if getattr(self, f.name) is not None}


def resolve_config(name: str, overrides: ExperimentOverrides) -> Dict[str, Any]:
    """
    Materialise every default of experiment ``name``.

    Returns:
        Dict: ``{"protocol": {...}, "k_max": ...}`` or ``{"dynamics": {...}}``,
        JSON-ready and suitable for a manifest

    Raises:
        UsageError: unknown experiment or an override that does
            not apply to it
        pydantic.ValidationError: an override outside its valid range
    """
    if name not in EXPERIMENT_NAMES:
        raise UsageError(
            f"Unknown experiment '{name}', expected one of {', '.join(EXPERIMENT_NAMES)}"
        )
    given = overrides.given()
    if name == "dynamics":
        unsupported = set(given) - {"seed", "epsilon", "omega", "steps", "lam"}
        if unsupported:
            raise UsageError(f"Options not supported by dynamics: {sorted(unsupported)}")
        if "lam" in given:
            # --lambda sets omega to the weight-map entry of a bridge
            if "omega" in given:
                raise UsageError("Give either --omega or --lambda for dynamics, not both")
            if given["lam"] < 0:
                raise UsageError(f"lambda must be non-negative, got {given['lam']}")
            given["omega"] = spectral_omega(given.pop("lam"))
        dynamics = DynamicsConfig(**given)
        return {"dynamics": dynamics.model_dump(mode="json")}

    unsupported = set(given) & {"epsilon", "omega", "steps"}
    if name != "phase" and "k_max" in given:
        unsupported.add("k_max")
    if unsupported:
        raise UsageError(f"Options not supported by {name}: {sorted(unsupported)}")
    protocol = default_protocol_config(
        name,
        trials=overrides.trials,
        rho=overrides.rho,
        lam=overrides.lam,
        base_seed=overrides.seed,
        jobs=overrides.jobs,
    )
    # the worker count never changes results, so manifests leave it out
    resolved: Dict[str, Any] = {
        "protocol": protocol.model_dump(mode="json", by_alias=True, exclude={"jobs"})
    }
    if name == "phase":
        k_max = settings.PHASE_K_MAX if overrides.k_max is None else overrides.k_max
        if k_max < 1:
            raise UsageError(f"k_max must be at least 1, got {k_max}")
        resolved["k_max"] = k_max
        resolved["clique_size"] = settings.BARBELL_CLIQUE_SIZE
    return resolved


def _seed_of(resolved: Dict[str, Any]) -> int:
    if "dynamics" in resolved:
        return int(resolved["dynamics"]["seed"])
    return int(resolved["protocol"]["base_seed"])


def _execute(name: str, resolved: Dict[str, Any], out_dir: Path, fmt: str, jobs: int) -> Path:
    """Run a resolved experiment and write its result file."""
    target = out_dir / name
    if name == "dynamics":
        config = DynamicsConfig.model_validate(resolved["dynamics"])
        standard, weighted = run_dynamics_pair(config)
        return write_trace(target, standard, weighted, fmt)

    config = ProtocolConfig.model_validate({**resolved["protocol"], "jobs": jobs})
    rows: List[ResultRow] = []
    if name == "phase":
        k_values = list(range(1, resolved["k_max"] + 1))
        started = time.perf_counter()
        points = run_phase_sweep(resolved["clique_size"], k_values, config)
        logger.info(
            f"Experiment phase: k=1..{resolved['k_max']}, rho={config.rho}, K={config.trials} "
            f"finished in {time.perf_counter() - started:.1f}s"
        )
        for point in points:
            rows.extend(
                ResultRow.from_stats(
                    "phase", stats, rho=config.rho, lam=config.lam, seed=config.base_seed, k=point.k
                )
                for stats in point.stats
            )
    else:
        for stats in run_experiment(name, config):
            rows.append(
                ResultRow.from_stats(name, stats, rho=config.rho, lam=config.lam, seed=config.base_seed)
            )
    return write_results(target, rows, fmt)


def _write_with_manifest(
    command: str,
    name: str,
    resolved: Dict[str, Any],
    out_dir: Path,
    fmt: str,
    jobs: Optional[int] = None,
) -> Path:
    result = _execute(name, resolved, out_dir, fmt, jobs or settings.DEFAULT_JOBS)
    manifest = RunManifest(
        command=command,
        experiment=name,
        config=resolved,
        seed=_seed_of(resolved),
        tool_version=__version__,
        output_format=fmt,
        outputs=[result.name],
    )
    write_manifest(result, manifest)
    return result


def cmd_experiment(
    name: str,
    overrides: Optional[ExperimentOverrides] = None,
    out: str = settings.OUTPUT_DIR,
    fmt: str = "csv",
) -> Path:
    """
    Run one experiment with defaults plus ``overrides``.

    Returns:
        Path: The result file (its manifest sits next to it)
    """
    overrides = overrides or ExperimentOverrides()
    resolved = resolve_config(name, overrides)
    logger.info(f"Running experiment {name} (seed {_seed_of(resolved)})")
    return _write_with_manifest(
        f"experiment {name}", name, resolved, Path(out), fmt, jobs=overrides.jobs
    )


def _fresh_run_dir(out: Path, seed: int) -> Path:
    stamp = datetime.now(timezone.utc).strftime("%Y%m%dT%H%M%SZ")
    base = out / f"run-{stamp}-seed{seed}"
    candidate, suffix = base, 1
    while candidate.exists():
        candidate = base.with_name(f"{base.name}-{suffix}")
        suffix += 1
    candidate.mkdir(parents=True)
    return candidate


def cmd_all(
    seed: int = settings.DEFAULT_SEED,
    out: str = settings.OUTPUT_DIR,
    fmt: str = "csv",
    trials: Optional[int] = None,
    jobs: Optional[int] = None,
) -> Path:
    """
    Full reproduction bundle: all four experiments into a timestamped directory.

    Partial outputs are removed if any experiment fails.

    Returns:
        Path: The run directory
    """
    plan = {}
    for name in EXPERIMENT_NAMES:
        if name == "dynamics":
            overrides = ExperimentOverrides(seed=seed)
        else:
            overrides = ExperimentOverrides(seed=seed, trials=trials, jobs=jobs)
        plan[name] = resolve_config(name, overrides)

    run_dir = _fresh_run_dir(Path(out), seed)
    started = time.perf_counter()
    try:
        for name, resolved in plan.items():
            logger.info(f"Running experiment {name} (seed {seed})")
            _write_with_manifest("all", name, resolved, run_dir, fmt, jobs=jobs)
    except Exception:
        logger.error(f"Reproduction failed, removing partial outputs in {run_dir}")
        shutil.rmtree(run_dir, ignore_errors=True)
        raise
    logger.info(f"Reproduction bundle written to {run_dir} in {time.perf_counter() - started:.1f}s")
    return run_dir


def cmd_replay(
    manifest_file: str, out: str = settings.OUTPUT_DIR, jobs: Optional[int] = None
) -> Path:
    """Re-run the experiment recorded in a manifest into ``out``."""
    manifest = read_manifest(manifest_file)
    if manifest.experiment not in EXPERIMENT_NAMES:
        raise InvalidParameterError(f"Manifest {manifest_file} does not describe an experiment")
    logger.info(f"Replaying {manifest.command} ({manifest.experiment}, seed {manifest.seed})")
    return _write_with_manifest(
        "replay",
        manifest.experiment,
        manifest.config,
        Path(out),
        manifest.output_format,
        jobs=jobs,
    )
