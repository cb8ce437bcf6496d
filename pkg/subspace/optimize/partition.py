import math
from dataclasses import dataclass
from typing import Sequence, Tuple

from subspace.utils.errors import DomainError, PartitionError
from .denominators import STEP_LIMIT, DenominatorKind

EDGE_GUARD = 1e-6
FEASIBILITY_TOLERANCE = 1e-12
GREEDY_LIMIT = 100000


@dataclass(frozen=True)
class PartitionPoints:
    """
    Points ``0 = kappa_0 < kappa_1 < ... < kappa_n = x``
    """

    x: float
    points: Tuple[float, ...]

    def __post_init__(self) -> None:
        pts = tuple(float(p) for p in self.points)
        if len(pts) == 0 or pts[0] != 0.0 or pts[-1] != float(self.x):
            raise PartitionError("Partition must start at 0 and end at x = " + str(self.x))
        for a, b in zip(pts, pts[1:]):
            if not b > a:
                raise PartitionError("Partition points must be strictly increasing")
        object.__setattr__(self, "points", pts)

    @property
    def n(self) -> int:
        return len(self.points) - 1

    def steps(self, kind: DenominatorKind) -> Tuple[float, ...]:
        """
        Ratios ``(kappa_{j+1} - kappa_j) / g(kappa_j)``
        """
        p = self.points
        return tuple((p[j + 1] - p[j]) / kind.g(p[j]) for j in range(self.n))

    def check(self, kind: DenominatorKind) -> None:
        if self.x > kind.kappa_max - EDGE_GUARD:
            raise DomainError("x = " + str(self.x) + " is too close to " + str(kind.kappa_max))
        for j, r in enumerate(self.steps(kind)):
            if r > STEP_LIMIT + FEASIBILITY_TOLERANCE:
                raise PartitionError(
                    "Step " + str(j) + " violates the constraint: ratio " + str(r) + " > 1/pi"
                )


def check_domain(x: float, kind: DenominatorKind) -> None:
    if not 0.0 <= x <= kind.kappa_max - EDGE_GUARD:
        raise DomainError(
            "x = " + str(x) + " outside [0, " + str(kind.kappa_max) + " - " + str(EDGE_GUARD) + "]"
        )


def half_sum(points: Sequence[float], kind: DenominatorKind) -> float:
    """
    ``1/2 sum_j arcsin(pi (kappa_{j+1} - kappa_j) / g(kappa_j))`` without
    validation
    """
    total = 0.0
    for j in range(len(points) - 1):
        arg = math.pi * (points[j + 1] - points[j]) / kind.g(points[j])
        total += math.asin(min(arg, 1.0))
    return 0.5 * total


def objective(partition: PartitionPoints, kind: DenominatorKind) -> float:
    """
    Chained arcsin half-sum of a feasible partition

    :raises PartitionError: when a step violates the constraint
    """
    partition.check(kind)
    return half_sum(partition.points, kind)


def n_min(x: float, kind: DenominatorKind) -> int:
    """
    Smallest number of steps reaching ``x``, taking maximal steps
    """
    check_domain(x, kind)
    kappa, n = 0.0, 0
    while kappa < x * (1 - 1e-14):
        kappa = kind.reach(kappa)
        n += 1
        if n > GREEDY_LIMIT:
            raise PartitionError("Can not reach x = " + str(x) + " with greedy steps")
    return n


def _land(x: float, n: int, scale: float, kind: DenominatorKind) -> float:
    kappa = 0.0
    for _ in range(n):
        kappa += scale * kind.g(kappa) * STEP_LIMIT
    return kappa


def seed_partition(x: float, n: int, kind: DenominatorKind) -> PartitionPoints:
    """
    Feasible starting partition with steps proportional to ``g(kappa_j)``,
    scaled to land exactly on ``x``

    :raises PartitionError: when ``n < n_min(x)``
    """
    check_domain(x, kind)
    if x == 0.0:
        return PartitionPoints(0.0, (0.0,))
    if n < 1 or _land(x, n, 1.0, kind) < x * (1 - 1e-14):
        raise PartitionError("No feasible partition of [0, " + str(x) + "] with n = " + str(n))
    lo, hi = 0.0, 1.0
    for _ in range(200):
        mid = (lo + hi) / 2
        if mid <= lo or mid >= hi:
            break
        if _land(x, n, mid, kind) < x:
            lo = mid
        else:
            hi = mid
    points = [0.0]
    for _ in range(n - 1):
        points.append(points[-1] + hi * kind.g(points[-1]) * STEP_LIMIT)
    points.append(x)
    return PartitionPoints(x, tuple(points))
