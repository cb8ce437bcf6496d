"""
Plain text matrix files: the first line holds ``dim``, then ``dim * dim``
lines ``i j re im`` with 0-based indices
"""
import numpy as np
import pandas as pd

from subspace.linalg import HermitianMatrix
from subspace.utils.errors import MatrixFileError, SubspaceError
from subspace.utils.messages import msg_end, msg_start

COLUMNS = ["i", "j", "re", "im"]


def _read_dim(path: str) -> int:
    try:
        with open(path, encoding="utf-8") as f:
            first = f.readline().strip()
    except OSError as e:
        raise MatrixFileError("Can not open matrix file " + path) from e
    try:
        dim = int(first)
    except ValueError as e:
        raise MatrixFileError("Can not read the dimension in " + path + ": " + repr(first)) from e
    if dim < 1:
        raise MatrixFileError("The dimension in " + path + " must be positive, got " + str(dim))
    return dim


def read_matrix(path: str) -> HermitianMatrix:
    """
    Loads a Hermitian matrix from a matrix file

    :param path: path of the file
    :type path: ``str``
    :return: the validated matrix
    :rtype: ``HermitianMatrix``
    :raises MatrixFileError: on a malformed file or a non Hermitian matrix

    :example: ``read_matrix("./a.mat")``
    """
    dim = _read_dim(path)
    try:
        df = pd.read_csv(path, sep=r"\s+", skiprows=1, header=None, names=COLUMNS, comment="#")
    except Exception as e:
        raise MatrixFileError("Can not parse entries of " + path) from e
    if len(df) != dim * dim:
        raise MatrixFileError(
            "Expected " + str(dim * dim) + " entries in " + path + ", got " + str(len(df))
        )
    if df.isnull().values.any():
        raise MatrixFileError("Incomplete entry line in " + path)
    try:
        i = df["i"].astype(np.int64).to_numpy()
        j = df["j"].astype(np.int64).to_numpy()
        values = df["re"].astype(np.float64).to_numpy() + 1j * df["im"].astype(np.float64).to_numpy()
    except (TypeError, ValueError) as e:
        raise MatrixFileError("Can not convert entries of " + path) from e
    if i.min() < 0 or j.min() < 0 or i.max() >= dim or j.max() >= dim:
        raise MatrixFileError("Entry index out of range in " + path)
    seen = np.zeros((dim, dim), dtype=np.int64)
    np.add.at(seen, (i, j), 1)
    if not np.all(seen == 1):
        raise MatrixFileError("Every entry of " + path + " must appear exactly once")
    m = np.zeros((dim, dim), dtype=np.complex128)
    m[i, j] = values
    try:
        return HermitianMatrix(m)
    except SubspaceError as e:
        raise MatrixFileError("Matrix in " + path + " is not valid: " + str(e)) from e


def write_matrix(m: HermitianMatrix, path: str) -> None:
    """
    Saves a matrix with 17 significant digits
    """
    n = m.dim
    i, j = np.divmod(np.arange(n * n), n)
    df = pd.DataFrame(
        {"i": i, "j": j, "re": m.entries.real.ravel(), "im": m.entries.imag.ravel()}
    )
    msg_start("Saving matrix to " + path + " ...")
    try:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(str(n) + "\n")
            df.to_csv(f, sep=" ", header=False, index=False, float_format="%.17g", lineterminator="\n")
    except OSError as e:
        raise MatrixFileError("Can not write matrix file " + path) from e
    msg_end("Matrix saved to", path)
