"""
Tests for the dense spectral core.

Effective resistance is checked against spanning-tree enumeration: the
resistance of edge e equals the fraction of spanning trees that contain e.
"""

from itertools import combinations

import networkx as nx
import numpy as np
import pytest

from bridgecheck.errors import ContractViolationError, DomainError, InvalidParameterError
from bridgecheck.graph import DisjointSet, Graph, gen_barbell, gen_chain_sbm, is_connected
from bridgecheck.spectral import (
    ResistanceMap,
    effective_resistance,
    fiedler_value,
    format_resistance_dump,
    laplacian,
    pseudoinverse,
    relative_spectral_error,
    resistance_weighted_objective,
    sym_eigendecomposition,
    weight_map,
)

from .corpus import graph_from_networkx, small_connected_corpus


def spanning_trees(g: Graph):
    """All spanning trees of g as frozensets of edge indices (brute force)."""
    trees = []
    for subset in combinations(range(g.m), g.n - 1):
        ds = DisjointSet(g.n)
        if all(ds.union(*g.edges[i]) for i in subset):
            trees.append(frozenset(subset))
    return trees


@pytest.fixture(scope="module")
def corpus():
    """200 connected graphs with n <= 7."""
    return small_connected_corpus(200)


# ============================================================================
# Laplacian and eigensolver
# ============================================================================
def test_laplacian_rows_sum_to_zero(barbell):
    lap = laplacian(barbell.graph)
    assert np.allclose(lap.sum(axis=1), 0.0)
    assert np.array_equal(lap, lap.T)
    assert lap[7, 7] == 8.0
    assert lap[7, 8] == -1.0


def test_eigendecomposition_reconstructs_matrix(path4):
    lap = laplacian(path4)
    values, vectors = sym_eigendecomposition(lap)
    assert np.all(np.diff(values) >= 0)
    assert np.allclose(vectors @ np.diag(values) @ vectors.T, lap, atol=1e-12)
    assert np.allclose(vectors.T @ vectors, np.eye(4), atol=1e-12)


def test_eigensolver_rejects_asymmetric_matrix():
    with pytest.raises(ContractViolationError, match="not symmetric"):
        sym_eigendecomposition(np.array([[1.0, 2.0], [0.0, 1.0]]))


def test_eigensolver_rejects_oversized_matrix():
    with pytest.raises(ContractViolationError, match="n <= 512"):
        sym_eigendecomposition(np.eye(513))


def test_eigensolver_rejects_non_square_matrix():
    with pytest.raises(ContractViolationError, match="square"):
        sym_eigendecomposition(np.zeros((2, 3)))


def test_pseudoinverse_identities(corpus):
    """Test L L+ L = L and L+ L L+ = L+ on the corpus."""
    for g in corpus[:50]:
        lap = laplacian(g)
        pinv = pseudoinverse(lap)
        assert np.allclose(lap @ pinv @ lap, lap, atol=1e-9)
        assert np.allclose(pinv @ lap @ pinv, pinv, atol=1e-9)
        assert np.allclose(pinv.sum(axis=1), 0.0, atol=1e-9)


def test_pseudoinverse_of_empty_graph_is_zero():
    assert np.array_equal(pseudoinverse(laplacian(Graph(n=3))), np.zeros((3, 3)))


# ============================================================================
# Effective resistance
# ============================================================================
def test_resistance_matches_spanning_tree_oracle(corpus):
    """Test R_eff against spanning-tree enumeration and Foster's theorem."""
    for g in corpus:
        trees = spanning_trees(g)
        rmap = effective_resistance(g)
        for index in range(g.m):
            share = sum(1 for tree in trees if index in tree) / len(trees)
            assert rmap.r[index] == pytest.approx(share, abs=1e-9)
        assert rmap.foster_sum() == pytest.approx(g.n - 1, abs=1e-6)


def test_spanning_tree_count_matches_kirchhoff(corpus):
    """Test the brute-force oracle itself against the matrix-tree determinant."""
    for g in corpus[:40]:
        reduced = laplacian(g)[1:, 1:]
        assert len(spanning_trees(g)) == round(np.linalg.det(reduced))


@pytest.mark.parametrize(
    "edges, n, expected",
    [
        ([(0, 1)], 2, [1.0]),
        ([(0, 1), (1, 2), (0, 2)], 3, [2 / 3] * 3),
        ([(0, 1), (1, 2), (2, 3)], 4, [1.0] * 3),
        ([(0, 1), (1, 2), (2, 3), (0, 3)], 4, [0.75] * 4),
    ],
)
def test_series_parallel_closed_forms(edges, n, expected):
    rmap = effective_resistance(Graph.from_edges(n, edges))
    assert rmap.r == pytest.approx(expected, abs=1e-12)


def test_bridges_have_unit_resistance():
    """Test R_eff = 1 on every designated bridge of every generated instance."""
    instances = [gen_barbell(8), gen_barbell(3), gen_chain_sbm([10, 15, 20]), gen_chain_sbm([4, 6])]
    for inst in instances:
        rmap = effective_resistance(inst.graph)
        for index in inst.bridge_edges:
            assert rmap.r[index] == pytest.approx(1.0, abs=1e-6)


def test_clique_edges_have_resistance_two_over_size(barbell_rmap, barbell, chain_rmap, chain):
    """Test R_eff = 2/s inside a K_s block."""
    clique = [i for i in range(barbell.graph.m) if i not in barbell.bridge_edges]
    assert barbell_rmap.r[clique] == pytest.approx(0.25, abs=1e-9)
    first_block = [i for i, (u, v) in enumerate(chain.graph.edges) if v < 10]
    assert chain_rmap.r[first_block] == pytest.approx(0.2, abs=1e-9)


def test_resistance_undefined_on_disconnected_graph():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(DomainError) as exc_info:
        effective_resistance(g)
    assert exc_info.value.separated == (0, 2)
    assert "0 and 2" in str(exc_info.value)


@pytest.mark.parametrize("seed", range(50))
def test_rayleigh_monotonicity(seed):
    """Test that adding an edge never increases any existing edge resistance."""
    nx_graph = nx.connected_watts_strogatz_graph(9, 4, 0.3, seed=seed)
    g = graph_from_networkx(nx_graph)
    missing = sorted(set(combinations(range(9), 2)) - set(g.edges))
    added = Graph.from_edges(9, list(g.edges) + [missing[seed % len(missing)]])
    before = effective_resistance(g)
    after = effective_resistance(added)
    for index, edge in enumerate(g.edges):
        assert after.r[added.edge_index[edge]] <= before.r[index] + 1e-12


# ============================================================================
# Weight map
# ============================================================================
def test_weight_map_on_barbell(barbell_rmap, barbell):
    bridge = barbell.bridge_list[0]
    assert barbell_rmap.lam == 2.0
    assert barbell_rmap.w[bridge] == pytest.approx(3.0)
    assert barbell_rmap.w[0] == pytest.approx(1.5)


def test_weight_map_with_zero_lambda_is_unit(triangle):
    assert np.array_equal(weight_map(triangle, 0.0).w, np.ones(3))


def test_weight_map_rejects_negative_lambda(triangle):
    with pytest.raises(InvalidParameterError, match="non-negative"):
        weight_map(triangle, -0.5)


def test_reweighted_reuses_resistances(barbell_rmap):
    other = barbell_rmap.reweighted(10.0)
    assert np.array_equal(other.r, barbell_rmap.r)
    assert other.w == pytest.approx(1.0 + 10.0 * barbell_rmap.r)


def test_resistance_map_is_read_only(barbell_rmap):
    with pytest.raises(ValueError):
        barbell_rmap.r[0] = 5.0


def test_weighted_objective():
    rmap = ResistanceMap.from_resistances([1.0, 0.5], lam=2.0)
    assert resistance_weighted_objective(rmap, [1.0, 2.0]) == pytest.approx(3.0 * 1.0 + 2.0 * 2.0)
    assert resistance_weighted_objective(rmap.reweighted(0.0), [1.0, 2.0]) == pytest.approx(3.0)
    with pytest.raises(InvalidParameterError):
        resistance_weighted_objective(rmap, [1.0])


def test_resistance_dump_format(triangle):
    dump = format_resistance_dump(triangle, weight_map(triangle, 2.0))
    assert dump.splitlines() == [
        "0 0 1 0.666666667 2.333333333",
        "1 0 2 0.666666667 2.333333333",
        "2 1 2 0.666666667 2.333333333",
    ]


# ============================================================================
# Fiedler value and relative spectral error
# ============================================================================
def test_fiedler_value_closed_forms(path4):
    assert fiedler_value(path4) == pytest.approx(2 - np.sqrt(2), abs=1e-12)
    complete = Graph.from_edges(5, combinations(range(5), 2))
    assert fiedler_value(complete) == pytest.approx(5.0, abs=1e-12)


def test_fiedler_value_needs_two_vertices():
    with pytest.raises(InvalidParameterError):
        fiedler_value(Graph(n=1))


def test_fiedler_positive_iff_connected(corpus):
    """Test lambda_2 > 1e-8 against union-find on graphs and their thinned subgraphs."""
    rng = np.random.default_rng(3)
    for g in corpus:
        for candidate in (g, g.subgraph(np.flatnonzero(rng.random(g.m) < 0.6))):
            if candidate.n < 2:
                continue
            assert (fiedler_value(candidate) > 1e-8) == is_connected(candidate)


def test_rse_of_graph_against_itself_is_zero(barbell):
    assert relative_spectral_error(barbell.graph, barbell.graph) == pytest.approx(0.0, abs=1e-12)


def test_rse_of_disconnected_sparsifier_is_exactly_one(barbell):
    h = barbell.graph.without_edges(barbell.bridge_edges)
    assert relative_spectral_error(barbell.graph, h) == 1.0


def test_rse_uses_reference_fiedler(path4):
    h = path4
    assert relative_spectral_error(path4, h, reference_fiedler=1.0) == pytest.approx(
        abs(1.0 - (2 - np.sqrt(2)))
    )


def test_rse_rejects_foreign_edges(path4, triangle):
    with pytest.raises(InvalidParameterError, match="subset"):
        relative_spectral_error(path4, Graph.from_edges(4, [(0, 3)]))
    with pytest.raises(InvalidParameterError):
        relative_spectral_error(path4, triangle)


def test_rse_rejects_disconnected_template():
    g = Graph.from_edges(4, [(0, 1), (2, 3)])
    with pytest.raises(DomainError):
        relative_spectral_error(g, g)
