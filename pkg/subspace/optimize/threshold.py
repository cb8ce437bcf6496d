import math
from typing import Callable, Dict

import numpy as np

from subspace.utils.errors import PartitionError, ThresholdError
from subspace.utils.messages import msg_end, msg_start
from .denominators import DenominatorKind
from .descent import OptimizationResult
from .estimating import estimating_function
from .partition import EDGE_GUARD

THRESHOLD_TOLERANCE = 1e-6
MONOTONICITY_SLACK = 1e-9
CHECK_POINTS = 12


def bisect(f: Callable[[float], float], lo: float, hi: float, tol: float, max_iter: int = 200) -> float:
    """
    Root of ``f`` on ``[lo, hi]`` by bisection

    :raises ThresholdError: when ``f`` has no sign change on the interval
    """
    flo, fhi = f(lo), f(hi)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if (flo > 0) == (fhi > 0):
        raise ThresholdError(
            "No sign change on [" + str(lo) + ", " + str(hi) + "]: f = " + str(flo) + ", " + str(fhi)
        )
    for _ in range(max_iter):
        if hi - lo <= tol:
            break
        mid = (lo + hi) / 2
        fmid = f(mid)
        if fmid == 0.0:
            return mid
        if (fmid > 0) == (fhi > 0):
            hi, fhi = mid, fmid
        else:
            lo, flo = mid, fmid
    return (lo + hi) / 2


def solve_threshold(
    kind: DenominatorKind, target: float = math.pi / 2, max_n: int = None, tol: float = THRESHOLD_TOLERANCE
) -> float:
    """
    Crossing point of the estimating function with ``target``

    :param kind: the denominator
    :type kind: ``DenominatorKind``
    :param target: the level, in ``(0, pi/2]``, **default**: ``pi/2``
    :type target: ``float``
    :param max_n: optional cap on the number of steps
    :type max_n: ``int`` *optional*
    :return: ``x`` with ``estimating_function(x) = target`` within ``tol``
    :rtype: ``float``
    :raises ThresholdError: when the function is not nondecreasing on the
        check grid or never reaches ``target``

    :example: ``solve_threshold(DenominatorKind.OFF_DIAGONAL)``
    """
    if not 0.0 < target <= math.pi / 2:
        raise ThresholdError("The target must lie in (0, pi/2], got " + str(target))
    evaluated: Dict[float, OptimizationResult] = {}

    def raw(x: float) -> float:
        # warm started from the closest point evaluated so far
        hint = evaluated[min(evaluated, key=lambda y: abs(y - x))] if evaluated else None
        try:
            result = estimating_function(x, kind, max_n=max_n, hint=hint)
        except PartitionError:
            # not reachable within max_n steps
            return math.inf
        evaluated[x] = result
        return result.raw_value

    msg_start("Solving threshold for", kind.value, "at", round(target, 6))
    edge = kind.kappa_max - EDGE_GUARD
    xs = np.linspace(0.0, edge, CHECK_POINTS)
    values = [raw(float(x)) for x in xs]
    for a, b in zip(values, values[1:]):
        if a > b + MONOTONICITY_SLACK:
            raise ThresholdError("Can not bisect: the estimating function decreases on the check grid")
    above = [k for k, v in enumerate(values) if v >= target]
    if not above:
        raise ThresholdError("Target " + str(target) + " is not attained below " + str(edge))
    k = above[0]
    if k == 0:
        msg_end("Threshold", 0.0)
        return 0.0
    root = bisect(lambda x: raw(x) - target, float(xs[k - 1]), float(xs[k]), tol)
    msg_end("Threshold", round(root, 9))
    return root
