"""
Adaptive Simpson quadrature and a midpoint-rule cross-check
"""
from typing import Callable, Tuple

import numpy as np

from subspace.utils.errors import ConvergenceError

ROUNDOFF = 8 * np.finfo(np.float64).eps


def _simpson(fa: float, fm: float, fb: float, h: float) -> float:
    return h / 3.0 * (fa + 4.0 * fm + fb)


def adaptive_simpson(
    f: Callable[[float], float],
    a: float,
    b: float,
    tol: float = 1e-12,
    max_depth: int = 60,
) -> Tuple[float, float]:
    """
    Adaptive Simpson integration with interval bisection

    :param f: scalar integrand
    :param a: lower bound
    :param b: upper bound
    :param tol: absolute tolerance, **default**: 1e-12
    :param max_depth: maximal bisection depth, **default**: 60
    :return: the integral and its error estimate
    :rtype: ``Tuple[float, float]``
    :raises ConvergenceError: when an interval still misses its
        tolerance at ``max_depth``
    """
    if a == b:
        return 0.0, 0.0
    if a > b:
        value, error = adaptive_simpson(f, b, a, tol, max_depth)
        return -value, error

    def _adaptive(a, b, fa, fm, fb, whole, depth, tol):
        m = (a + b) / 2.0
        h = (b - a) / 2.0
        flm = f((a + m) / 2.0)
        frm = f((m + b) / 2.0)
        left = _simpson(fa, flm, fm, h / 2.0)
        right = _simpson(fm, frm, fb, h / 2.0)
        estimate = (left + right - whole) / 15.0
        # below roundoff of the panel sum the halved tolerance is unreachable
        if abs(estimate) <= max(tol, ROUNDOFF * abs(left + right)):
            return left + right + estimate, abs(estimate)
        if depth >= max_depth:
            raise ConvergenceError(
                "Can not integrate on [" + str(a) + ", " + str(b) + "] within " + str(tol)
            )
        lv, le = _adaptive(a, m, fa, flm, fm, left, depth + 1, tol / 2.0)
        rv, re = _adaptive(m, b, fm, frm, fb, right, depth + 1, tol / 2.0)
        return lv + rv, le + re

    fa, fb = f(a), f(b)
    fm = f((a + b) / 2.0)
    return _adaptive(a, b, fa, fm, fb, _simpson(fa, fm, fb, (b - a) / 2.0), 0, tol)


def midpoint_rule(f: Callable[[np.ndarray], np.ndarray], a: float, b: float, n: int) -> float:
    """
    Composite midpoint rule with ``n`` panels; ``f`` must accept arrays
    """
    h = (b - a) / n
    nodes = a + (np.arange(n) + 0.5) * h
    return float(h * np.sum(f(nodes)))
