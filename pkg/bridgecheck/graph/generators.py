"""
Adversarial graph generators.

Each generator returns deterministic complete cliques joined by single
bridge edges, plus the marginal frequency model that makes the bridges
statistically rare. The left endpoint of a bridge is always the
highest-indexed vertex of the left clique and the right endpoint the
lowest-indexed vertex of the right clique, so edges come out in ascending
(u, v) order and every instance is bit-reproducible.
"""

import logging
from itertools import combinations
from typing import List, Sequence

from ..config import settings
from ..errors import InvalidParameterError
from .connectivity import is_connected
from .models import Edge, FrequencyModel, GeneratedInstance, Graph

logger = logging.getLogger(__name__)

INSTANCE_NAMES = ("barbell", "chain", "visible")


def _check_probability(name: str, value: float) -> None:
    if not 0.0 <= value <= 1.0:
        raise InvalidParameterError(f"{name} must lie in [0, 1], got {value}")


def _clique_edges(offset: int, size: int) -> List[Edge]:
    return [(offset + i, offset + j) for i, j in combinations(range(size), 2)]


def gen_chain_sbm(
    clique_sizes: Sequence[int],
    clique_freq: float = settings.CLIQUE_FREQ,
    bridge_freq: float = settings.BRIDGE_FREQ,
) -> GeneratedInstance:
    """
    Complete cliques of the given sizes arranged in a path.

    Consecutive cliques are joined by exactly one bridge edge, so the result
    has ``len(clique_sizes) - 1`` bridges and
    ``sum(C(s, 2)) + len(clique_sizes) - 1`` edges.

    Args:
        clique_sizes: Sizes of the cliques, left to right (each >= 2)
        clique_freq: P_freq of every clique edge
        bridge_freq: P_freq of every bridge edge

    Returns:
        GeneratedInstance: graph, frequency model and bridge indices

    Raises:
        InvalidParameterError: fewer than two cliques, a clique smaller
            than 2, or a frequency outside [0, 1]
    """
    sizes = [int(s) for s in clique_sizes]
    if len(sizes) < 2:
        raise InvalidParameterError(f"A chain needs at least two cliques, got {len(sizes)}")
    if any(s < 2 for s in sizes):
        raise InvalidParameterError(f"Every clique needs at least 2 vertices, got {sizes}")
    _check_probability("clique_freq", clique_freq)
    _check_probability("bridge_freq", bridge_freq)

    edges: List[Edge] = []
    freqs: List[float] = []
    bridges: List[int] = []
    offset = 0
    for position, size in enumerate(sizes):
        if position > 0:
            bridges.append(len(edges))
            edges.append((offset - 1, offset))
            freqs.append(float(bridge_freq))
        block = _clique_edges(offset, size)
        edges.extend(block)
        freqs.extend([float(clique_freq)] * len(block))
        offset += size

    graph = Graph(n=offset, edges=tuple(edges))
    instance = GeneratedInstance(
        graph=graph,
        freq=FrequencyModel(tuple(freqs)),
        bridge_edges=frozenset(bridges),
        name="chain",
    )
    # Removing the bridges must split the chain
    assert not is_connected(graph.without_edges(bridges))
    logger.debug(f"Generated chain {sizes}: n={graph.n}, m={graph.m}, bridges={bridges}")
    return instance


def gen_barbell(
    clique_size: int = settings.BARBELL_CLIQUE_SIZE,
    clique_freq: float = settings.CLIQUE_FREQ,
    bridge_freq: float = settings.BRIDGE_FREQ,
) -> GeneratedInstance:
    """Two copies of K_{clique_size} joined by one bridge edge."""
    if clique_size < 2:
        raise InvalidParameterError(f"clique_size must be at least 2, got {clique_size}")
    chain = gen_chain_sbm([clique_size, clique_size], clique_freq, bridge_freq)
    return GeneratedInstance(
        graph=chain.graph, freq=chain.freq, bridge_edges=chain.bridge_edges, name="barbell"
    )


def visible_bridge_freq(k: int, saturation: int = settings.VISIBILITY_SATURATION) -> float:
    """Bridge frequency after thickening to ``k``: min(1, k / saturation)."""
    if k < 1:
        raise InvalidParameterError(f"Bridge thickness k must be at least 1, got {k}")
    return min(1.0, k / saturation)


def gen_visible_barbell(
    clique_size: int = settings.BARBELL_CLIQUE_SIZE,
    k: int = 1,
    clique_freq: float = settings.CLIQUE_FREQ,
) -> GeneratedInstance:
    """
    Barbell whose single bridge is made statistically visible.

    Thickening is frequency amplification only: the structure is the plain
    barbell, so the bridge keeps R_eff = 1 for every ``k``.
    """
    bridge_freq = visible_bridge_freq(k)
    barbell = gen_barbell(clique_size, clique_freq, bridge_freq)
    return GeneratedInstance(
        graph=barbell.graph,
        freq=barbell.freq,
        bridge_edges=barbell.bridge_edges,
        name="visible",
    )


def build_instance(
    name: str,
    *,
    clique_size: int = settings.BARBELL_CLIQUE_SIZE,
    clique_sizes: Sequence[int] = settings.CHAIN_CLIQUE_SIZES,
    k: int = 1,
) -> GeneratedInstance:
    """Built-in instance by name: ``barbell``, ``chain`` or ``visible``."""
    if name == "barbell":
        return gen_barbell(clique_size)
    if name == "chain":
        return gen_chain_sbm(clique_sizes)
    if name == "visible":
        return gen_visible_barbell(clique_size, k)
    raise InvalidParameterError(
        f"Unknown instance '{name}', expected one of {', '.join(INSTANCE_NAMES)}"
    )
