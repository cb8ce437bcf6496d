import math
from enum import Enum

import numpy as np

STEP_LIMIT = 1 / math.pi


class DenominatorKind(Enum):
    """
    Lower bound ``d * g(kappa)`` for the distance between the perturbed
    spectral components along the path ``A + tV``, with ``kappa = t||V||/d``

    - GENERIC: ``g(kappa) = 1 - 2 kappa`` on ``[0, 1/2)``
    - OFF_DIAGONAL: ``g(kappa) = 2 - sqrt(1 + 4 kappa^2)`` on ``[0, sqrt(3)/2)``
    """

    GENERIC = "generic"
    OFF_DIAGONAL = "off-diagonal"

    @property
    def kappa_max(self) -> float:
        if self is DenominatorKind.GENERIC:
            return 0.5
        return math.sqrt(3) / 2

    def g(self, kappa: float) -> float:
        if self is DenominatorKind.GENERIC:
            return 1.0 - 2.0 * kappa
        return 2.0 - math.sqrt(1.0 + 4.0 * kappa * kappa)

    def g_array(self, kappa: np.ndarray) -> np.ndarray:
        if self is DenominatorKind.GENERIC:
            return 1.0 - 2.0 * kappa
        return 2.0 - np.sqrt(1.0 + 4.0 * kappa * kappa)

    def reach(self, kappa: float) -> float:
        """
        Farthest point of a feasible step from ``kappa``
        """
        return kappa + self.g(kappa) * STEP_LIMIT

    def inverse_reach(self, target: float, lo: float) -> float:
        """
        Smallest ``kappa >= lo`` whose reach covers ``target``. The reach
        is increasing since ``|g'| < pi`` on the domain
        """
        if self.reach(lo) >= target:
            return lo
        if self is DenominatorKind.GENERIC:
            return max(lo, (target - STEP_LIMIT) / (1.0 - 2.0 * STEP_LIMIT))
        a, b = lo, target
        for _ in range(200):
            m = (a + b) / 2
            if m <= a or m >= b:
                break
            if self.reach(m) >= target:
                b = m
            else:
                a = m
        return b
