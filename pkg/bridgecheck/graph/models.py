"""
Immutable graph types.

Graph, FrequencyModel and GeneratedInstance are frozen dataclasses; every
operation on them returns a new object, so they are safe to share between
threads and to pickle into worker processes.
"""

from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, Sequence, Tuple

import numpy as np

from ..errors import InvalidParameterError

Edge = Tuple[int, int]


@dataclass(frozen=True)
class Graph:
    """
    Simple undirected graph with stable edge indices.

    Edge ``i`` is ``edges[i]``; every pair satisfies ``u < v``. Vertices are
    ``0..n-1``. Self-loops, duplicates and out-of-range endpoints are
    rejected at construction, as is ``n = 0``.
    """

    n: int
    edges: Tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParameterError(f"Graph needs at least one vertex, got n={self.n}")
        seen = set()
        for index, (u, v) in enumerate(self.edges):
            if u == v:
                raise InvalidParameterError(f"Edge {index} is a self-loop at vertex {u}")
            if not u < v:
                raise InvalidParameterError(f"Edge {index} must satisfy u < v, got ({u}, {v})")
            if u < 0 or v >= self.n:
                raise InvalidParameterError(
                    f"Edge {index} ({u}, {v}) has an endpoint outside 0..{self.n - 1}"
                )
            if (u, v) in seen:
                raise InvalidParameterError(f"Duplicate edge ({u}, {v})")
            seen.add((u, v))

    @classmethod
    def from_edges(cls, n: int, pairs: Iterable[Sequence[int]]) -> "Graph":
        """Build a canonical graph: pairs normalised to (min, max) and sorted."""
        normalised = sorted((min(int(a), int(b)), max(int(a), int(b))) for a, b in pairs)
        return cls(n=n, edges=tuple(normalised))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def endpoints(self) -> Tuple[np.ndarray, np.ndarray]:
        """Endpoint index arrays ``(u, v)`` aligned with edge indices."""
        if not self.edges:
            empty = np.zeros(0, dtype=np.intp)
            return empty, empty
        pairs = np.asarray(self.edges, dtype=np.intp)
        return pairs[:, 0], pairs[:, 1]

    @cached_property
    def edge_index(self) -> Dict[Edge, int]:
        return {edge: index for index, edge in enumerate(self.edges)}

    def subgraph(self, edge_indices: Iterable[int]) -> "Graph":
        """Spanning subgraph keeping the given edges, in ascending index order."""
        keep = sorted(set(int(i) for i in edge_indices))
        if keep and (keep[0] < 0 or keep[-1] >= self.m):
            raise InvalidParameterError(f"Edge index out of range 0..{self.m - 1}")
        return Graph(n=self.n, edges=tuple(self.edges[i] for i in keep))

    def without_edges(self, edge_indices: Iterable[int]) -> "Graph":
        drop = set(int(i) for i in edge_indices)
        return self.subgraph(i for i in range(self.m) if i not in drop)

    def is_edge_subset_of(self, other: "Graph") -> bool:
        return self.n == other.n and set(self.edges) <= set(other.edges)


@dataclass(frozen=True)
class FrequencyModel:
    """
    Marginal appearance probability per edge index.

    ``freq[i]`` is P_freq of edge ``i`` of the companion graph.
    """

    freq: Tuple[float, ...]

    def __post_init__(self):
        for index, value in enumerate(self.freq):
            if not 0.0 <= value <= 1.0:
                raise InvalidParameterError(
                    f"Frequency of edge {index} must lie in [0, 1], got {value}"
                )

    def __len__(self) -> int:
        return len(self.freq)

    def __getitem__(self, index: int) -> float:
        return self.freq[index]

    def as_array(self) -> np.ndarray:
        return np.asarray(self.freq, dtype=np.float64)

    def check_for(self, graph: Graph) -> None:
        if len(self.freq) != graph.m:
            raise InvalidParameterError(
                f"Frequency model covers {len(self.freq)} edges, graph has {graph.m}"
            )


@dataclass(frozen=True)
class GeneratedInstance:
    """
    Adversarial template graph with its frequency model and designated bridges.
    """

    graph: Graph
    freq: FrequencyModel
    bridge_edges: FrozenSet[int] = field(default_factory=frozenset)
    name: str = "custom"

    def __post_init__(self):
        self.freq.check_for(self.graph)
        for index in self.bridge_edges:
            if not 0 <= index < self.graph.m:
                raise InvalidParameterError(f"Bridge index {index} out of range")

    @property
    def bridge_list(self) -> Tuple[int, ...]:
        return tuple(sorted(self.bridge_edges))
