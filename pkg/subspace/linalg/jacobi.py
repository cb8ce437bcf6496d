"""
Cyclic Jacobi eigensolver for dense complex Hermitian matrices
"""
import math

import numpy as np

from subspace.core.env import SOLVERS, settings
from subspace.utils.errors import ConvergenceError
from .hermitian import EigenDecomposition, HermitianMatrix

SWEEP_BUDGET = 100
CONVERGENCE = 1e-13


def _rotation(app: float, aqq: float, apq: complex) -> np.ndarray:
    """
    2x2 unitary annihilating the (p, q) pair: a phase making ``apq`` real,
    followed by a real Jacobi rotation
    """
    r = abs(apq)
    phase = apq / r
    phi = 0.5 * math.atan2(2.0 * r, aqq - app)
    c, s = math.cos(phi), math.sin(phi)
    conj_phase = phase.conjugate()
    return np.array([[c, s], [-s * conj_phase, c * conj_phase]], dtype=np.complex128)


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _jacobi(m: HermitianMatrix) -> EigenDecomposition:
    a = np.array(m.entries, dtype=np.complex128)
    n = a.shape[0]
    v = np.eye(n, dtype=np.complex128)
    frob = float(np.linalg.norm(a))
    target = CONVERGENCE * frob
    # pairs below this size can not move the off-diagonal mass above target
    negligible = 1e-15 * frob / n
    sweeps = 0
    while _off_norm(a) > target:
        if sweeps == SWEEP_BUDGET:
            raise ConvergenceError(
                "Can not diagonalize matrix in " + str(SWEEP_BUDGET) + " Jacobi sweeps"
            )
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = complex(a[p, q])
                if abs(apq) <= negligible:
                    continue
                g = _rotation(a[p, p].real, a[q, q].real, apq)
                idx = [p, q]
                a[:, idx] = a[:, idx] @ g
                a[idx, :] = g.conj().T @ a[idx, :]
                a[p, q] = a[q, p] = 0.0
                a[p, p] = a[p, p].real
                a[q, q] = a[q, q].real
                v[:, idx] = v[:, idx] @ g
        sweeps += 1
    values = np.diag(a).real
    order = np.argsort(values, kind="stable")
    return EigenDecomposition(values[order], v[:, order], m, sweeps)


def _lapack(m: HermitianMatrix) -> EigenDecomposition:
    try:
        values, vectors = np.linalg.eigh(m.entries)
    except np.linalg.LinAlgError as e:
        raise ConvergenceError("Can not diagonalize matrix with LAPACK") from e
    return EigenDecomposition(values, vectors, m)


def eigen_decompose(m: HermitianMatrix, solver: str = None) -> EigenDecomposition:
    """
    Eigendecomposition of a Hermitian matrix with ascending eigenvalues

    :param m: the matrix
    :type m: ``HermitianMatrix``
    :param solver: ``jacobi`` or ``lapack``, **default**: the
        ``SUBSPACE_EIGENSOLVER`` setting
    :type solver: ``str`` *optional*
    :return: the eigenvalues and the unitary eigenvector matrix
    :rtype: ``EigenDecomposition``

    :example: ``eigen_decompose(HermitianMatrix([[0, 1], [1, 0]]))``
    """
    if solver is None:
        solver = settings.eigensolver
    if solver == "jacobi":
        return _jacobi(m)
    if solver == "lapack":
        return _lapack(m)
    raise ValueError("Unknown eigensolver " + str(solver) + ", use one of " + ", ".join(SOLVERS))
