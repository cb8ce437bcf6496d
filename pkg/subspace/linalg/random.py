import numpy as np

from .hermitian import HermitianMatrix
from .jacobi import eigen_decompose


def generator(seed) -> np.random.Generator:
    """
    Seeded PCG64DXSM generator. Accepts an integer or a
    ``numpy.random.SeedSequence``
    """
    return np.random.Generator(np.random.PCG64DXSM(seed))


def random_hermitian(rng: np.random.Generator, dim: int) -> HermitianMatrix:
    """
    Hermitian matrix with standard normal real and imaginary parts
    """
    x = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return HermitianMatrix((x + x.conj().T) / 2)


def random_unitary(rng: np.random.Generator, dim: int, solver: str = None) -> np.ndarray:
    """
    Unitary matrix taken as the eigenvector matrix of a random Hermitian
    """
    return eigen_decompose(random_hermitian(rng, dim), solver).eigenvectors
