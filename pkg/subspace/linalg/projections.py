import math
from typing import Iterable, List, Tuple

import numpy as np

from subspace.utils.errors import ConfigurationError, DimensionError
from .hermitian import EigenDecomposition, HermitianMatrix, OrthogonalProjection, SpectralPartition
from .jacobi import eigen_decompose

CLUSTER_TOLERANCE = 1e-10


def operator_norm(m: HermitianMatrix, solver: str = None) -> float:
    """
    Operator norm ``max(|min spec|, |max spec|)`` of a Hermitian matrix
    """
    return eigen_decompose(m, solver).norm


def _check_indices(dim: int, indices: Iterable[int]) -> Tuple[int, ...]:
    idx = tuple(sorted(set(int(i) for i in indices)))
    for i in idx:
        if i < 0 or i >= dim:
            raise DimensionError("Index " + str(i) + " out of range for dimension " + str(dim))
    return idx


def spectral_projection(ed: EigenDecomposition, indices: Iterable[int]) -> OrthogonalProjection:
    """
    Orthogonal projection onto the span of the eigenvectors with the
    given indices. An empty index set gives the zero projection
    """
    idx = _check_indices(ed.dim, indices)
    u = ed.eigenvectors[:, list(idx)]
    return OrthogonalProjection(u @ u.conj().T, len(idx))


def maximal_angle(p: OrthogonalProjection, q: OrthogonalProjection, solver: str = None) -> float:
    """
    Maximal angle ``arcsin(||P - Q||)`` between the ranges of two
    orthogonal projections, in ``[0, pi/2]``
    """
    if p.dim != q.dim:
        raise DimensionError("Dimension mismatch: " + str(p.dim) + " and " + str(q.dim))
    # canonical order makes the result exactly symmetric in (p, q)
    if p.matrix.tobytes() > q.matrix.tobytes():
        p, q = q, p
    s = operator_norm(HermitianMatrix(p.matrix - q.matrix), solver)
    return math.asin(min(max(s, 0.0), 1.0))


def eigenvalue_clusters(ed: EigenDecomposition) -> List[List[int]]:
    """
    Groups of consecutive eigenvalues closer than ``1e-10 ||M||``
    """
    tol = CLUSTER_TOLERANCE * ed.norm
    clusters = [[0]]
    for k in range(1, ed.dim):
        if ed.eigenvalues[k] - ed.eigenvalues[k - 1] <= tol:
            clusters[-1].append(k)
        else:
            clusters.append([k])
    return clusters


def make_partition(ed: EigenDecomposition, sigma: Iterable[int]) -> SpectralPartition:
    """
    Partition of the spectrum of A into sigma (the given eigenvalue
    indices) and its complement Sigma

    :raises ConfigurationError: when sigma or Sigma is empty, or when
        sigma splits a cluster of degenerate eigenvalues
    """
    idx = _check_indices(ed.dim, sigma)
    chosen = set(idx)
    rest = tuple(k for k in range(ed.dim) if k not in chosen)
    if len(idx) == 0 or len(rest) == 0:
        raise ConfigurationError("Both sigma and its complement must be non empty")
    for cluster in eigenvalue_clusters(ed):
        inside = [k in chosen for k in cluster]
        if any(inside) and not all(inside):
            raise ConfigurationError(
                "Sigma splits the eigenvalue cluster " + str(cluster) + ": it is not isolated"
            )
    s = ed.eigenvalues[list(idx)]
    t = ed.eigenvalues[list(rest)]
    d = float(np.abs(np.subtract.outer(s, t)).min())
    if d <= 0.0:
        raise ConfigurationError("Sigma is not isolated: d = " + str(d))
    return SpectralPartition(
        idx, rest, tuple(float(x) for x in s), tuple(float(x) for x in t), d
    )


def select_perturbed_indices(
    ed: EigenDecomposition, sigma_values: Iterable[float], radius: float, tol: float = 0.0
) -> Tuple[int, ...]:
    """
    Indices ``k`` with ``dist(lambda_k, sigma_values) <= radius``. The
    optional ``tol`` widens the closed neighborhood to absorb roundoff
    """
    if radius <= 0:
        raise ValueError("The selection radius must be positive, got " + str(radius))
    values = np.asarray(list(sigma_values), dtype=np.float64)
    if values.size == 0:
        return ()
    dist = np.abs(np.subtract.outer(ed.eigenvalues, values)).min(axis=1)
    return tuple(int(k) for k in np.nonzero(dist <= radius + tol)[0])


def select_interval_indices(
    ed: EigenDecomposition, lo: float, hi: float, tol: float = 0.0
) -> Tuple[int, ...]:
    """
    Indices ``k`` with ``lo <= lambda_k <= hi``, widened by ``tol``
    """
    lam = ed.eigenvalues
    return tuple(int(k) for k in np.nonzero((lam >= lo - tol) & (lam <= hi + tol))[0])


def anticommutator_residual(v: HermitianMatrix, p: OrthogonalProjection) -> float:
    """
    ``||V (P - P^perp) + (P - P^perp) V||``: zero for off-diagonal
    perturbations
    """
    if v.dim != p.dim:
        raise DimensionError("Dimension mismatch: " + str(v.dim) + " and " + str(p.dim))
    j = 2 * p.matrix - np.eye(p.dim)
    return float(np.linalg.norm(v.entries @ j + j @ v.entries, 2))
