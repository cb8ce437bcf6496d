import os
from dataclasses import dataclass

SOLVERS = ("jacobi", "lapack")


@dataclass
class Settings:
    """
    Runtime settings read once from the environment

    :param quiet: silence console messages (``SUBSPACE_QUIET``)
    :param eigensolver: default solver for ``eigen_decompose``
        (``SUBSPACE_EIGENSOLVER``: jacobi or lapack)
    :param workers: number of threads for verification trials
        (``SUBSPACE_WORKERS``)
    :param oracle_grid: grid size of the dynamic programming oracle
        attached to optimizer results (``SUBSPACE_ORACLE_GRID``)
    """

    quiet: bool = False
    eigensolver: str = "jacobi"
    workers: int = 1
    oracle_grid: int = 400


def _flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in ("1", "true", "yes", "on")


def _int(name: str, default: int, minimum: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise ValueError("Can not read " + name + ": " + raw) from e
    return max(value, minimum)


def _load_settings() -> Settings:
    solver = os.environ.get("SUBSPACE_EIGENSOLVER", "jacobi").strip().lower()
    if solver not in SOLVERS:
        raise ValueError("Unknown eigensolver " + solver + " in SUBSPACE_EIGENSOLVER")
    return Settings(
        quiet=_flag("SUBSPACE_QUIET"),
        eigensolver=solver,
        workers=_int("SUBSPACE_WORKERS", 1, 1),
        oracle_grid=_int("SUBSPACE_ORACLE_GRID", 400, 100),
    )


settings = _load_settings()


def configure(**changes) -> Settings:
    """
    Override settings at runtime, ex: from command line flags

    :example: ``configure(quiet=True, workers=4)``
    """
    for key, value in changes.items():
        if not hasattr(settings, key):
            raise ValueError("Unknown setting " + key)
        if key == "eigensolver" and value not in SOLVERS:
            raise ValueError("Unknown eigensolver " + str(value))
        setattr(settings, key, value)
    return settings
