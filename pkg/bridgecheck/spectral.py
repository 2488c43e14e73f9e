"""
Dense Laplacian spectral machinery.

Provides the exact O(N^3) pipeline behind the offline pre-computation step:
Laplacian construction, symmetric eigendecomposition, Moore-Penrose
pseudoinverse, effective resistance, the resistance weight map
W_e = 1 + lambda * R_eff(e), the Fiedler value and the relative spectral
error used to score sparsified graphs.

Matrices are plain ``numpy`` float64 arrays (``SymMatrix``); symmetry is
checked at the eigensolver boundary.
"""

import logging
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

import numpy as np
import numpy.typing as npt

from .config import settings
from .errors import ContractViolationError, DomainError, InvalidParameterError
from .graph import Graph, is_connected, separated_pair

logger = logging.getLogger(__name__)

SymMatrix = npt.NDArray[np.float64]


@dataclass(frozen=True, eq=False)
class ResistanceMap:
    """
    Per-edge effective resistance and the derived weight map.

    Attributes:
        r: R_eff per edge index, in (0, 1] for a connected simple graph
        lam: weighting hyperparameter lambda >= 0
        w: W_e = 1 + lam * r per edge index
    """

    r: np.ndarray
    lam: float
    w: np.ndarray

    def __post_init__(self):
        if self.lam < 0:
            raise InvalidParameterError(f"lambda must be non-negative, got {self.lam}")
        if self.r.shape != self.w.shape:
            raise InvalidParameterError("Resistance and weight arrays differ in length")
        self.r.setflags(write=False)
        self.w.setflags(write=False)

    @classmethod
    def from_resistances(cls, r: Sequence[float], lam: float = 0.0) -> "ResistanceMap":
        values = np.array(r, dtype=np.float64)
        return cls(r=values, lam=float(lam), w=1.0 + float(lam) * values)

    def __len__(self) -> int:
        return int(self.r.shape[0])

    def reweighted(self, lam: float) -> "ResistanceMap":
        """Same resistances under a new lambda; L+ is not recomputed."""
        return ResistanceMap.from_resistances(self.r, lam)

    def foster_sum(self) -> float:
        return float(self.r.sum())


def laplacian(g: Graph) -> SymMatrix:
    """L = D - A: degrees on the diagonal, -1 per edge, rows summing to 0."""
    lap = np.zeros((g.n, g.n), dtype=np.float64)
    u, v = g.endpoints
    lap[u, v] = -1.0
    lap[v, u] = -1.0
    np.add.at(lap, (u, u), 1.0)
    np.add.at(lap, (v, v), 1.0)
    return lap


def _check_symmetric(a: SymMatrix) -> None:
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ContractViolationError(f"Expected a square matrix, got shape {a.shape}")
    if a.shape[0] > settings.MAX_DENSE_DIM:
        raise ContractViolationError(
            f"Dense eigensolver supports n <= {settings.MAX_DENSE_DIM}, got {a.shape[0]}"
        )
    scale = float(np.max(np.abs(a))) if a.size else 0.0
    asymmetry = float(np.max(np.abs(a - a.T))) if a.size else 0.0
    if asymmetry > settings.SYMMETRY_RTOL * scale:
        raise ContractViolationError(f"Matrix is not symmetric (max |a_ij - a_ji| = {asymmetry:.3e})")


def sym_eigendecomposition(a: SymMatrix) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigendecomposition of a real symmetric matrix.

    Args:
        a: Symmetric matrix with n <= 512

    Returns:
        Tuple of (eigenvalues ascending, orthonormal eigenvectors as columns)

    Raises:
        ContractViolationError: non-square, oversized or non-symmetric input
    """
    a = np.asarray(a, dtype=np.float64)
    _check_symmetric(a)
    eigenvalues, eigenvectors = np.linalg.eigh(0.5 * (a + a.T))
    return eigenvalues, eigenvectors


def pseudoinverse(lap: SymMatrix) -> SymMatrix:
    """
    Moore-Penrose pseudoinverse of a graph Laplacian.

    Eigenvalues above tau = 1e-9 * n * lambda_max are inverted, the rest
    (the theoretical zeros, one per component) are dropped.
    """
    n = lap.shape[0]
    eigenvalues, eigenvectors = sym_eigendecomposition(lap)
    lam_max = float(np.max(np.abs(eigenvalues))) if n else 0.0
    if lam_max == 0.0:
        return np.zeros_like(lap, dtype=np.float64)
    tau = settings.PINV_RTOL * n * lam_max
    keep = eigenvalues > tau
    inverted = np.zeros_like(eigenvalues)
    inverted[keep] = 1.0 / eigenvalues[keep]
    pinv = (eigenvectors * inverted) @ eigenvectors.T
    logger.debug(f"Pseudoinverse of {n}x{n} Laplacian: rank {int(keep.sum())}, tau={tau:.3e}")
    return 0.5 * (pinv + pinv.T)


def _require_connected(g: Graph, what: str) -> None:
    if not is_connected(g):
        pair = separated_pair(g)
        raise DomainError(
            f"{what} is undefined on a disconnected graph: "
            f"vertices {pair[0]} and {pair[1]} lie in different components",
            separated=pair,
        )


def effective_resistance(g: Graph) -> ResistanceMap:
    """
    R_eff(e_uv) = (1_u - 1_v)^T L+ (1_u - 1_v) for every edge.

    Returns a map with lam = 0 and unit weights.

    Raises:
        DomainError: ``g`` is disconnected (resistance across components is
            infinite); the error names two separated vertices
    """
    _require_connected(g, "Effective resistance")
    pinv = pseudoinverse(laplacian(g))
    u, v = g.endpoints
    r = pinv[u, u] + pinv[v, v] - 2.0 * pinv[u, v]
    return ResistanceMap.from_resistances(r, 0.0)


def weight_map(g: Graph, lam: float = settings.DEFAULT_LAMBDA) -> ResistanceMap:
    """Effective resistance with W_e = 1 + lam * R_eff(e)."""
    if lam < 0:
        raise InvalidParameterError(f"lambda must be non-negative, got {lam}")
    return effective_resistance(g).reweighted(lam)


def fiedler_value(g: Graph) -> float:
    """
    Second-smallest Laplacian eigenvalue (algebraic connectivity).

    Clamped below at 0; values <= 1e-8 indicate a disconnected graph.
    """
    if g.n < 2:
        raise InvalidParameterError(f"Fiedler value needs n >= 2, got n={g.n}")
    eigenvalues, _ = sym_eigendecomposition(laplacian(g))
    return max(0.0, float(eigenvalues[1]))


def relative_spectral_error(
    g_true: Graph,
    h: Graph,
    reference_fiedler: Optional[float] = None,
) -> float:
    """
    RSE = |lambda_2(g_true) - lambda_2(h)| / lambda_2(g_true).

    lambda_2(h) is taken as exactly 0 when ``h`` is disconnected, so a
    disconnected sparsifier scores exactly 1.0.

    Args:
        g_true: Connected template graph
        h: Spanning subgraph of ``g_true``
        reference_fiedler: Precomputed lambda_2(g_true), if available

    Raises:
        InvalidParameterError: ``h`` is not a spanning subgraph of ``g_true``
        DomainError: ``g_true`` is disconnected
    """
    if not h.is_edge_subset_of(g_true):
        raise InvalidParameterError("h must share the vertex set of g_true and use a subset of its edges")
    _require_connected(g_true, "Relative spectral error")
    lam_true = fiedler_value(g_true) if reference_fiedler is None else float(reference_fiedler)
    lam_h = fiedler_value(h) if is_connected(h) else 0.0
    return max(0.0, abs(lam_true - lam_h) / lam_true)


def resistance_weighted_objective(rmap: ResistanceMap, losses: Sequence[float]) -> float:
    """Sum over edges of W_e * loss_e; equals sum(loss_e) when lambda = 0."""
    values = np.asarray(losses, dtype=np.float64)
    if values.shape != rmap.w.shape:
        raise InvalidParameterError(f"Expected {len(rmap)} per-edge losses, got {values.shape[0]}")
    return float(np.dot(rmap.w, values))


def format_resistance_dump(g: Graph, rmap: ResistanceMap) -> str:
    """One line per edge: ``edge_index u v r_eff w``."""
    decimals = settings.DUMP_DECIMALS
    lines = [
        f"{index} {u} {v} {rmap.r[index]:.{decimals}f} {rmap.w[index]:.{decimals}f}"
        for index, (u, v) in enumerate(g.edges)
    ]
    return "\n".join(lines) + ("\n" if lines else "")
