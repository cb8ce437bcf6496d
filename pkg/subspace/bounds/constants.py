import math

from subspace.optimize import bisect
from .functions import SINGULAR_GUARD, SQRT3_2, ms_argument

MS_TOLERANCE = 1e-10


def c_s() -> float:
    """
    ``1/2 - 1/2 (1 - sqrt(3)/pi)^3``, the generic threshold: three equal
    steps of arcsin argument ``sqrt(3)/2`` reach it
    """
    return 0.5 - 0.5 * (1 - math.sqrt(3) / math.pi) ** 3


def kmm_saturation() -> float:
    """
    Positive root of ``(4 - pi^2) x^2 + 6 pi x - 8 = 0``, where the
    argument of ``m_kmm`` reaches 1
    """
    a, b, c = 4 - math.pi ** 2, 6 * math.pi, -8.0
    disc = b * b - 4 * a * c
    # 2c / (-b - sqrt(disc)) avoids the cancellation of -b + sqrt(disc)
    return 2 * c / (-b - math.sqrt(disc))


def ms_threshold(tol: float = MS_TOLERANCE) -> float:
    """
    Root of ``m_ms(x) = pi/2``, found on the uncapped argument
    """
    return bisect(lambda x: ms_argument(x) - 1.0, 0.0, SQRT3_2 - SINGULAR_GUARD, tol)
