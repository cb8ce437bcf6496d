"""
Dynamic programming over a uniform grid of ``[0, x]``: the exact minimum of
the half-sum over all feasible monotone node paths
"""
import math
from typing import Tuple

import numpy as np

from subspace.utils.errors import OracleError
from .denominators import STEP_LIMIT, DenominatorKind
from .partition import check_domain

MIN_GRID = 100


def dp_path(x: float, kind: DenominatorKind, grid_size: int) -> Tuple[float, Tuple[float, ...]]:
    """
    Minimal half-sum and its node path

    :param x: right end of the path
    :param kind: the denominator
    :param grid_size: number of grid intervals, at least 100
    :return: the minimum and the path ``(0, ..., x)``
    :raises OracleError: when no feasible path exists on the grid
    """
    if grid_size < MIN_GRID:
        raise ValueError("The oracle grid needs at least " + str(MIN_GRID) + " intervals")
    check_domain(x, kind)
    if x == 0.0:
        return 0.0, (0.0,)
    n = int(grid_size)
    # x * (k / n) keeps the nodes of a grid inside every multiple of it
    nodes = x * (np.arange(n + 1) / n)
    nodes[-1] = x
    g = kind.g_array(nodes)
    reach = np.searchsorted(nodes, nodes + g * STEP_LIMIT * (1 + 1e-12), side="right") - 1
    cost = np.full(n + 1, np.inf)
    parent = np.full(n + 1, -1, dtype=np.int64)
    cost[0] = 0.0
    for j in range(n):
        if not np.isfinite(cost[j]) or reach[j] <= j:
            continue
        hi = int(reach[j])
        arg = np.minimum(math.pi * (nodes[j + 1:hi + 1] - nodes[j]) / g[j], 1.0)
        cand = cost[j] + np.arcsin(arg)
        seg = cost[j + 1:hi + 1]
        better = cand < seg
        seg[better] = cand[better]
        parent[j + 1:hi + 1][better] = j
    if not np.isfinite(cost[n]):
        raise OracleError(
            "Can not reach x = " + str(x) + " on a grid of " + str(n) + ": refine the grid"
        )
    path = [n]
    while path[-1] != 0:
        path.append(int(parent[path[-1]]))
    return 0.5 * float(cost[n]), tuple(float(nodes[k]) for k in reversed(path))


def dp_oracle(x: float, kind: DenominatorKind, grid_size: int) -> float:
    """
    Grid oracle for the infimum of the half-sum. The grid splits
    ``[0, x]`` into ``grid_size`` equal intervals, so it has
    ``grid_size + 1`` nodes counting both ends, and a grid of ``2m``
    contains every node of a grid of ``m``

    :param grid_size: number of intervals, at least 100
    :raises OracleError: when no feasible path exists on the grid

    :example: ``dp_oracle(0.2, DenominatorKind.GENERIC, 2000)``
    """
    return dp_path(x, kind, grid_size)[0]
