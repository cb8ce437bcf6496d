from dataclasses import dataclass
from typing import Tuple

import numpy as np

from subspace.utils.errors import DimensionError, HermitianError

SYMMETRY_TOLERANCE = 1e-12
IDEMPOTENCE_TOLERANCE = 1e-10
TRACE_TOLERANCE = 1e-8


def _frozen(m: np.ndarray) -> np.ndarray:
    m.setflags(write=False)
    return m


@dataclass(frozen=True)
class HermitianMatrix:
    """
    Dense complex Hermitian operator. The entries are validated for
    Hermitian symmetry (relative tolerance 1e-12), then symmetrized
    exactly and stored read-only

    :param entries: a square array-like of complex values
    """

    entries: np.ndarray

    def __post_init__(self) -> None:
        try:
            m = np.array(self.entries, dtype=np.complex128)
        except (TypeError, ValueError) as e:
            raise HermitianError("Can not read matrix entries") from e
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] < 1:
            raise DimensionError("A Hermitian matrix must be square, got " + str(m.shape))
        if not np.all(np.isfinite(m)):
            raise HermitianError("Matrix entries must be finite")
        scale = float(np.abs(m).max())
        asym = float(np.abs(m - m.conj().T).max())
        if asym > SYMMETRY_TOLERANCE * scale:
            raise HermitianError(
                "Matrix is not Hermitian: asymmetry " + str(asym) + " for scale " + str(scale)
            )
        object.__setattr__(self, "entries", _frozen((m + m.conj().T) / 2))

    def __repr__(self) -> str:
        return "<HermitianMatrix | dim " + str(self.dim) + ">"

    @property
    def dim(self) -> int:
        return self.entries.shape[0]

    @classmethod
    def zeros(cls, dim: int) -> "HermitianMatrix":
        return cls(np.zeros((dim, dim), dtype=np.complex128))

    @classmethod
    def identity(cls, dim: int) -> "HermitianMatrix":
        return cls(np.eye(dim, dtype=np.complex128))

    @classmethod
    def diagonal(cls, values) -> "HermitianMatrix":
        return cls(np.diag(np.asarray(values, dtype=np.float64)).astype(np.complex128))

    def __add__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        self.check_dim(other)
        return HermitianMatrix(self.entries + other.entries)

    def __sub__(self, other: "HermitianMatrix") -> "HermitianMatrix":
        self.check_dim(other)
        return HermitianMatrix(self.entries - other.entries)

    def scaled(self, factor: float) -> "HermitianMatrix":
        return HermitianMatrix(self.entries * float(factor))

    def conjugated(self, unitary: np.ndarray) -> "HermitianMatrix":
        """
        Returns ``U M U*``
        """
        u = np.asarray(unitary)
        return HermitianMatrix(u @ self.entries @ u.conj().T)

    def check_dim(self, other: "HermitianMatrix") -> None:
        if other.dim != self.dim:
            raise DimensionError(
                "Dimension mismatch: " + str(self.dim) + " and " + str(other.dim)
            )


@dataclass(frozen=True)
class EigenDecomposition:
    """
    Ascending eigenvalues and the unitary matrix of eigenvectors (columns)
    of a Hermitian matrix
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    matrix: HermitianMatrix
    sweeps: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "eigenvalues", _frozen(np.array(self.eigenvalues, dtype=np.float64)))
        object.__setattr__(self, "eigenvectors", _frozen(np.array(self.eigenvectors, dtype=np.complex128)))

    @property
    def dim(self) -> int:
        return self.eigenvalues.shape[0]

    @property
    def norm(self) -> float:
        return float(max(abs(self.eigenvalues[0]), abs(self.eigenvalues[-1])))

    def residual(self) -> float:
        """
        Largest ``||M u_k - lambda_k u_k||`` over the eigenpairs
        """
        r = self.matrix.entries @ self.eigenvectors - self.eigenvectors * self.eigenvalues
        return float(np.linalg.norm(r, axis=0).max())

    def unitarity_defect(self) -> float:
        u = self.eigenvectors
        return float(np.abs(u.conj().T @ u - np.eye(self.dim)).max())


@dataclass(frozen=True)
class OrthogonalProjection:
    """
    Hermitian idempotent matrix with its rank. Stored symmetrized
    """

    matrix: np.ndarray
    rank: int

    def __post_init__(self) -> None:
        p = np.array(self.matrix, dtype=np.complex128)
        p = (p + p.conj().T) / 2
        if p.ndim != 2 or p.shape[0] != p.shape[1]:
            raise DimensionError("A projection must be square, got " + str(p.shape))
        if np.abs(p @ p - p).max(initial=0.0) > IDEMPOTENCE_TOLERANCE:
            raise HermitianError("Matrix is not idempotent")
        if abs(np.trace(p).real - self.rank) > TRACE_TOLERANCE:
            raise HermitianError("Projection trace does not match rank " + str(self.rank))
        object.__setattr__(self, "matrix", _frozen(p))

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def complement(self) -> "OrthogonalProjection":
        return OrthogonalProjection(np.eye(self.dim) - self.matrix, self.dim - self.rank)


@dataclass(frozen=True)
class SpectralPartition:
    """
    Split of the spectrum of A into the index sets of sigma and Sigma,
    with ``d = dist(sigma, Sigma) > 0``
    """

    sigma: Tuple[int, ...]
    complement: Tuple[int, ...]
    sigma_values: Tuple[float, ...]
    complement_values: Tuple[float, ...]
    d: float

    @property
    def dim(self) -> int:
        return len(self.sigma) + len(self.complement)
