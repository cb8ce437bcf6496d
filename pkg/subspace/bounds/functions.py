"""
Estimating functions ``M`` with ``theta <= M(||V||/d)`` and their domains
"""
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Callable, Optional

from subspace.optimize import DenominatorKind, estimating_function, optimized_bound
from subspace.utils.errors import DomainError
from .quadrature import adaptive_simpson

GUARD = 1e-9
SINGULAR_GUARD = 1e-6
QUADRATURE_TOLERANCE = 1e-12
SQRT3_2 = math.sqrt(3) / 2
SQRT3 = 2 * SQRT3_2
# ms_argument(0.7) > 1, past the saturation of m_ms
MS_SATURATED = 0.7


class BoundKind(Enum):
    DK_SIN2 = "dk_sin2"
    GENERIC_SIN2 = "generic_sin2"
    DK_TAN2 = "dk_tan2"
    APRIORI_TAN = "apriori_tan"
    KMM = "kmm"
    MS = "ms"
    GEN_OPT = "gen_opt"
    OFF_OPT = "off_opt"


def _check(x: float, x_max: float, closed: bool, guard: float, name: str) -> None:
    if closed:
        ok = 0.0 <= x <= x_max
    else:
        ok = 0.0 <= x <= x_max - guard
    if not ok:
        end = "]" if closed else ")"
        raise DomainError(
            "Can not evaluate " + name + " at x = " + str(x) + " outside [0, " + str(x_max) + end
        )


def dk_sin2theta(x: float) -> float:
    """
    ``1/2 arcsin(2x)`` on ``[0, 1/2)``
    """
    _check(x, 0.5, False, GUARD, "dk_sin2theta")
    return 0.5 * math.asin(2 * x)


def generic_sin2theta(x: float) -> float:
    """
    ``1/2 arcsin(pi x)`` on ``[0, 1/pi]``
    """
    _check(x, 1 / math.pi, True, 0.0, "generic_sin2theta")
    return 0.5 * math.asin(min(math.pi * x, 1.0))


def dk_tan2theta(x: float) -> float:
    """
    ``1/2 arctan(2x)``, valid for every ``x >= 0``
    """
    _check(x, math.inf, True, 0.0, "dk_tan2theta")
    return 0.5 * math.atan(2 * x)


def apriori_tantheta(x: float) -> float:
    """
    ``arctan(x)`` on ``[0, sqrt(2))``
    """
    _check(x, math.sqrt(2), False, GUARD, "apriori_tantheta")
    return math.atan(x)


def kmm_argument(x: float) -> float:
    return math.pi * x / (3 - math.sqrt(1 + 4 * x * x))


def m_kmm(x: float) -> float:
    """
    ``arcsin(min(1, pi x / (3 - sqrt(1 + 4x^2))))`` on ``[0, sqrt(3)/2)``
    """
    _check(x, SQRT3_2, False, GUARD, "m_kmm")
    return math.asin(min(1.0, kmm_argument(x)))


def _ms_integrand(t: float) -> float:
    # 2 - sqrt(1 + 4t^2) rewritten without cancellation near sqrt(3)/2
    return (2.0 + math.sqrt(1.0 + 4.0 * t * t)) / ((SQRT3 - 2.0 * t) * (SQRT3 + 2.0 * t))


def ms_argument(x: float) -> float:
    """
    Uncapped ``(pi/2) int_0^x dt / (2 - sqrt(1 + 4t^2))``

    :raises DomainError: for ``x > sqrt(3)/2 - 1e-6``, where the integrand
        blows up
    """
    _check(x, SQRT3_2, False, SINGULAR_GUARD, "ms_argument")
    value, _ = adaptive_simpson(_ms_integrand, 0.0, x, QUADRATURE_TOLERANCE)
    return 0.5 * math.pi * value


def m_ms(x: float) -> float:
    """
    ``arcsin(min(1, ms_argument(x)))``
    """
    if x >= MS_SATURATED:
        _check(x, SQRT3_2, False, SINGULAR_GUARD, "m_ms")
        return 0.5 * math.pi
    return math.asin(min(1.0, ms_argument(x)))


@lru_cache(maxsize=1024)
def gen_opt(x: float) -> float:
    """
    Optimized generic estimating function, capped at pi/2
    """
    _check(x, 0.5, False, SINGULAR_GUARD, "gen_opt")
    return estimating_function(x, DenominatorKind.GENERIC).value


@lru_cache(maxsize=1024)
def off_opt(x: float) -> float:
    """
    Optimized off-diagonal estimating function, capped at pi/2
    """
    _check(x, SQRT3_2, False, SINGULAR_GUARD, "off_opt")
    return estimating_function(x, DenominatorKind.OFF_DIAGONAL).value


@dataclass(frozen=True)
class BoundFunction:
    """
    An estimating function with its validity domain ``[0, x_max)``, or
    ``[0, x_max]`` when ``closed``

    :example: ``bound_function(BoundKind.KMM)(0.2)``
    """

    kind: BoundKind
    x_max: float
    closed: bool
    guard: float
    evaluator: Callable[[float], float]
    denominator: Optional[DenominatorKind] = None

    def contains(self, x: float) -> bool:
        if self.closed:
            return 0.0 <= x <= self.x_max
        return 0.0 <= x <= self.x_max - self.guard

    def __call__(self, x: float) -> float:
        return self.evaluator(x)

    def upper(self, x: float) -> float:
        """
        A value no smaller than the function at ``x``: the function itself
        for closed forms, the cached value at x rounded up for optimized
        kinds
        """
        if self.denominator is None or not self.contains(x):
            return self(x)
        return optimized_bound(x, self.denominator)


_FUNCTIONS = {
    BoundKind.DK_SIN2: BoundFunction(BoundKind.DK_SIN2, 0.5, False, GUARD, dk_sin2theta),
    BoundKind.GENERIC_SIN2: BoundFunction(
        BoundKind.GENERIC_SIN2, 1 / math.pi, True, 0.0, generic_sin2theta
    ),
    BoundKind.DK_TAN2: BoundFunction(BoundKind.DK_TAN2, math.inf, True, 0.0, dk_tan2theta),
    BoundKind.APRIORI_TAN: BoundFunction(
        BoundKind.APRIORI_TAN, math.sqrt(2), False, GUARD, apriori_tantheta
    ),
    BoundKind.KMM: BoundFunction(BoundKind.KMM, SQRT3_2, False, GUARD, m_kmm),
    BoundKind.MS: BoundFunction(BoundKind.MS, SQRT3_2, False, SINGULAR_GUARD, m_ms),
    BoundKind.GEN_OPT: BoundFunction(
        BoundKind.GEN_OPT, 0.5, False, SINGULAR_GUARD, gen_opt, DenominatorKind.GENERIC
    ),
    BoundKind.OFF_OPT: BoundFunction(
        BoundKind.OFF_OPT, SQRT3_2, False, SINGULAR_GUARD, off_opt, DenominatorKind.OFF_DIAGONAL
    ),
}


def bound_function(kind: BoundKind) -> BoundFunction:
    """
    The estimating function of a kind

    :param kind: the bound kind
    :type kind: ``BoundKind``
    :rtype: ``BoundFunction``
    """
    return _FUNCTIONS[BoundKind(kind)]
