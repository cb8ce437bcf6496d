from typing import Iterable, Tuple

from subspace.io.matrix import read_matrix
from subspace.linalg import HermitianMatrix, eigen_decompose, select_interval_indices
from subspace.utils.errors import ConfigurationError
from subspace.utils.messages import msg_end, msg_start
from . import SubSpace


def sigma_from_interval(a: HermitianMatrix, lo: float, hi: float, solver: str = None) -> Tuple[int, ...]:
    """
    Indices of the eigenvalues of ``a`` in ``[lo, hi]``
    """
    if not lo <= hi:
        raise ConfigurationError("Empty interval [" + str(lo) + ", " + str(hi) + "]")
    return select_interval_indices(eigen_decompose(a, solver), lo, hi)


def from_matrices(
    a, v, sigma: Iterable[int] = None, interval: Tuple[float, float] = None, solver: str = None
) -> SubSpace:
    """
    Initialize a SubSpace from two matrices

    :param a: the unperturbed operator, a ``HermitianMatrix`` or an array
    :param v: the perturbation, a ``HermitianMatrix`` or an array
    :param sigma: indices of the eigenvalues of ``a`` forming sigma
    :type sigma: ``Iterable[int]`` *optional*
    :param interval: ``(lo, hi)``: take the eigenvalues of ``a`` in
        this interval instead of ``sigma``
    :type interval: ``Tuple[float, float]`` *optional*
    :param solver: eigensolver, **default**: the settings
    :type solver: ``str`` *optional*
    :return: a SubSpace
    :rtype: ``SubSpace``

    :example: ``subspace.from_matrices(np.diag([0, 1]), [[0, 0.2], [0.2, 0]], sigma=[0])``
    """
    if not isinstance(a, HermitianMatrix):
        a = HermitianMatrix(a)
    if not isinstance(v, HermitianMatrix):
        v = HermitianMatrix(v)
    if (sigma is None) == (interval is None):
        raise ConfigurationError("Give either sigma indices or an interval")
    if interval is not None:
        sigma = sigma_from_interval(a, interval[0], interval[1], solver)
    return SubSpace(a, v, sigma, solver)


def from_files(
    a_path: str, v_path: str, sigma: Iterable[int] = None, interval: Tuple[float, float] = None, solver: str = None
) -> SubSpace:
    """
    Loads the two matrices from matrix files

    :param a_path: path of the file of ``A``
    :type a_path: ``str``
    :param v_path: path of the file of ``V``
    :type v_path: ``str``
    :return: a SubSpace
    :rtype: ``SubSpace``

    :example: ``subspace.from_files("./a.mat", "./v.mat", sigma=[0])``
    """
    msg_start("Loading matrices...")
    a, v = read_matrix(a_path), read_matrix(v_path)
    msg_end("Finished loading matrices")
    return from_matrices(a, v, sigma, interval, solver)
