"""
Exact connectivity via disjoint-set union.

The spectral criterion lambda_2 > 0 is only a cross-check; the success
metric of the sparsification protocol is decided here, without tolerances.
"""

from typing import Dict, List, Optional, Tuple

from .models import Graph


class DisjointSet:
    """
    Disjoint sets over ``0..n-1`` with path compression and union by rank.

    Examples
    --------
    >>> ds = DisjointSet(5)
    >>> ds.union(0, 1)
    True
    >>> ds.union(1, 2)
    True
    >>> ds.find(2) == ds.find(0)
    True
    >>> ds.components
    3
    """

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.rank = [0] * n
        self.components = n

    def find(self, x: int) -> int:
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        # path compression
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, x: int, y: int) -> bool:
        """Merge the sets of ``x`` and ``y``; False if already merged."""
        px, py = self.find(x), self.find(y)
        if px == py:
            return False
        if self.rank[px] < self.rank[py]:
            px, py = py, px
        self.parent[py] = px
        if self.rank[px] == self.rank[py]:
            self.rank[px] += 1
        self.components -= 1
        return True


def _union_all(g: Graph) -> DisjointSet:
    ds = DisjointSet(g.n)
    for u, v in g.edges:
        ds.union(u, v)
        if ds.components == 1:
            break
    return ds


def is_connected(g: Graph) -> bool:
    """True iff ``g`` has exactly one connected component."""
    return _union_all(g).components == 1


def connected_components(g: Graph) -> List[List[int]]:
    """Components as sorted vertex lists, ordered by smallest vertex."""
    ds = _union_all(g)
    groups: Dict[int, List[int]] = {}
    for vertex in range(g.n):
        groups.setdefault(ds.find(vertex), []).append(vertex)
    return sorted(groups.values(), key=lambda members: members[0])


def separated_pair(g: Graph) -> Optional[Tuple[int, int]]:
    """Two vertices in different components, or None for a connected graph."""
    components = connected_components(g)
    if len(components) < 2:
        return None
    return components[0][0], components[1][0]
