import math
from dataclasses import dataclass

from subspace.utils.errors import DomainError


@dataclass(frozen=True)
class ShiftBound:
    """
    Maximal shift ``epsilon`` of the spectral sets of ``A`` under an
    off-diagonal perturbation of norm ``norm_v``, for the separation ``d``
    """

    norm_v: float
    d: float
    epsilon: float

    @property
    def gap(self) -> float:
        """
        Lower bound ``d - 2 epsilon`` for ``dist(omega, Omega)``
        """
        return self.d - 2 * self.epsilon


def _check(norm_v: float, d: float) -> None:
    if not d > 0:
        raise DomainError("The separation d must be positive, got " + str(d))
    if not norm_v >= 0:
        raise DomainError("The norm of V must be nonnegative, got " + str(norm_v))


def epsilon_shift(norm_v: float, d: float) -> ShiftBound:
    """
    ``epsilon_V = ||V|| tan(arctan(2 ||V|| / d) / 2)``

    :param norm_v: norm of the perturbation
    :type norm_v: ``float``
    :param d: distance between sigma and Sigma
    :type d: ``float``
    :rtype: ``ShiftBound``

    :example: ``epsilon_shift(1.0, 1.0).epsilon``
    """
    _check(norm_v, d)
    eps = norm_v * math.tan(0.5 * math.atan(2 * norm_v / d))
    return ShiftBound(float(norm_v), float(d), eps)


def epsilon_closed_form(norm_v: float, d: float) -> float:
    """
    ``(sqrt(d^2 + 4 ||V||^2) - d) / 2``, the half-angle form of ``epsilon_V``
    """
    _check(norm_v, d)
    return (math.sqrt(d * d + 4 * norm_v * norm_v) - d) / 2
