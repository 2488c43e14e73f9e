"""
Graph-level commands: resistance dump, instance generation, generative gap.
"""

import logging
import sys
from pathlib import Path
from typing import List, Optional, TextIO

from ..config import settings
from ..errors import UsageError
from ..graph import (
    build_instance,
    read_edge_list,
    read_frequency_file,
    write_edge_list,
    write_frequency_file,
)
from ..schemas import GapRow
from ..sparsify import generative_gap
from ..spectral import (
    ResistanceMap,
    format_resistance_dump,
    resistance_weighted_objective,
    weight_map,
)
from .export import write_gap

logger = logging.getLogger(__name__)


def _check_lambda(lam: float) -> None:
    if lam < 0:
        raise UsageError(f"--lambda must be non-negative, got {lam}")


def cmd_resistance(
    graph_file: str,
    lam: float = settings.DEFAULT_LAMBDA,
    out: Optional[str] = None,
    stdout: Optional[TextIO] = None,
    freq_file: Optional[str] = None,
) -> ResistanceMap:
    """
    Offline pre-computation for one graph file.

    Writes the resistance dump (``edge_index u v r_eff w``) to ``out`` or
    to ``stdout``, then prints the Foster check (sum of R_eff against n - 1).
    With ``freq_file`` it also prints the frequency-driven objective with
    every edge's loss set to its frequency, unweighted and under the
    weight map.

    Raises:
        UsageError: negative ``lam``
        EdgeListFormatError: unreadable or malformed file
        DomainError: disconnected graph
    """
    _check_lambda(lam)
    stream = stdout or sys.stdout
    graph = read_edge_list(graph_file)
    freq = read_frequency_file(freq_file, graph.m) if freq_file else None
    rmap = weight_map(graph, lam)
    dump = format_resistance_dump(graph, rmap)
    if out:
        target = Path(out)
        target.parent.mkdir(parents=True, exist_ok=True)
        target.write_text(dump, encoding="utf-8", newline="\n")
        logger.info(f"Wrote resistance dump for {graph.m} edges to {target}")
    else:
        stream.write(dump)
    stream.write(f"sum_r_eff={rmap.foster_sum():.9f} n_minus_1={graph.n - 1}\n")
    if freq is not None:
        plain = resistance_weighted_objective(rmap.reweighted(0.0), freq.freq)
        weighted = resistance_weighted_objective(rmap, freq.freq)
        stream.write(f"objective_standard={plain:.9f} objective_weighted={weighted:.9f}\n")
    return rmap


def cmd_generate(name: str, out: str, k: int = 1) -> List[Path]:
    """Write ``<name>.edges`` and ``<name>.freq`` for a built-in instance."""
    inst = build_instance(name, k=k)
    target = Path(out)
    target.mkdir(parents=True, exist_ok=True)
    edges_path = target / f"{name}.edges"
    freq_path = target / f"{name}.freq"
    write_edge_list(edges_path, inst.graph)
    write_frequency_file(freq_path, inst.freq)
    logger.info(
        f"Generated {name}: n={inst.graph.n}, m={inst.graph.m}, "
        f"bridges={list(inst.bridge_list)} -> {edges_path}"
    )
    return [edges_path, freq_path]


def cmd_gap(
    name: str,
    lam: float = settings.DEFAULT_LAMBDA,
    out: str = settings.OUTPUT_DIR,
    fmt: str = "csv",
) -> Path:
    """Per-edge frequency / resistance table of a built-in instance."""
    _check_lambda(lam)
    inst = build_instance(name)
    rmap = weight_map(inst.graph, lam)
    rows = [GapRow(**record) for record in generative_gap(inst, rmap)]
    return write_gap(Path(out) / f"{name}_gap", rows, fmt)
