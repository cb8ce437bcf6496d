"""
Cyclic coordinate descent over the interior partition points, each
coordinate minimized by golden section search on its feasible interval
and then over-relaxed when that still improves the half-sum
"""
import math
from dataclasses import dataclass
from typing import Callable, Optional, Sequence, Tuple

from subspace.utils.errors import ConvergenceError, PartitionError
from .denominators import STEP_LIMIT, DenominatorKind
from .partition import PartitionPoints, check_domain, half_sum, n_min, seed_partition

INV_PHI = (math.sqrt(5) - 1) / 2  # 1/phi
INV_PHI2 = (3 - math.sqrt(5)) / 2  # 1/phi^2

CYCLE_TOLERANCE = 1e-12
GOLDEN_TOLERANCE = 1e-11
CYCLE_BUDGET = 20000
RELAXATION_CAP = 1.9


@dataclass(frozen=True)
class OptimizationResult:
    """
    Minimized chained arcsin half-sum

    :param value: the half-sum, capped at pi/2 for reporting
    :param partition: the minimizing partition
    :param n: number of steps
    :param dp_value: value of the grid oracle, ``None`` when not computed
        or when the grid can not reach x
    :param converged: ``False`` when some n of the sweep was skipped
    :param raw_value: the uncapped half-sum
    :param capped: whether ``raw_value > pi/2``
    :param candidates: the optimized partitions of every ``n`` of the
        sweep, used to warm start nearby evaluations
    """

    value: float
    partition: PartitionPoints
    n: int
    dp_value: Optional[float]
    converged: bool
    raw_value: float
    capped: bool = False
    kind: Optional[DenominatorKind] = None
    candidates: Tuple[PartitionPoints, ...] = ()

    @property
    def x(self) -> float:
        return self.partition.x


def golden_section(
    f: Callable[[float], float], lo: float, hi: float, tol: float = GOLDEN_TOLERANCE
) -> Tuple[float, float]:
    """
    Minimum of a unimodal function on ``[lo, hi]``

    :return: the minimizer and the minimum
    :rtype: ``Tuple[float, float]``

    :example: ``golden_section(lambda t: (t - 1) ** 2, 0, 3)``
    """
    a, b = min(lo, hi), max(lo, hi)
    h = b - a
    if h <= tol:
        m = (a + b) / 2
        return m, f(m)
    n = int(math.ceil(math.log(tol / h) / math.log(INV_PHI)))
    c = a + INV_PHI2 * h
    d = a + INV_PHI * h
    yc, yd = f(c), f(d)
    for _ in range(n):
        if yc < yd:
            b, d, yd = d, c, yc
            h = INV_PHI * h
            c = a + INV_PHI2 * h
            yc = f(c)
        else:
            a, c, yc = c, d, yd
            h = INV_PHI * h
            d = a + INV_PHI * h
            yd = f(d)
    if yc < yd:
        return c, yc
    return d, yd


def _term(kind: DenominatorKind, left: float, right: float) -> float:
    arg = math.pi * (right - left) / kind.g(left)
    return math.asin(min(arg, 1.0))


def relaxation(n: int) -> float:
    """
    Over-relaxation factor for a chain of ``n - 1`` coupled interior
    points, ``2 / (1 + sin(pi/n))`` capped at 1.9
    """
    if n < 2:
        return 1.0
    return min(RELAXATION_CAP, 2.0 / (1.0 + math.sin(math.pi / n)))


def optimize_fixed_n(
    x: float,
    n: int,
    kind: DenominatorKind,
    seed: Optional[Sequence[float]] = None,
    tol: float = CYCLE_TOLERANCE,
    max_cycles: int = CYCLE_BUDGET,
) -> OptimizationResult:
    """
    Local minimum of the half-sum over partitions of ``[0, x]`` with
    ``n`` steps. Every iterate stays feasible

    :param x: right end of the partition
    :param n: number of steps, at least ``n_min(x, kind)``
    :param kind: the denominator
    :param seed: optional feasible starting points, **default**: the
        g-proportional seed
    :raises PartitionError: when ``n`` is infeasible
    :raises ConvergenceError: when the cycle budget is exhausted
    """
    check_domain(x, kind)
    if x == 0.0:
        return OptimizationResult(0.0, PartitionPoints(0.0, (0.0,)), 0, None, True, 0.0, kind=kind)
    if n < n_min(x, kind):
        raise PartitionError("No feasible partition of [0, " + str(x) + "] with n = " + str(n))
    if seed is None:
        start = seed_partition(x, n, kind)
    else:
        start = PartitionPoints(x, tuple(seed))
        if start.n != n:
            raise PartitionError("Seed has " + str(start.n) + " steps, expected " + str(n))
        start.check(kind)
    points = list(start.points)
    value = half_sum(points, kind)
    omega = relaxation(n)
    cycles = 0
    while n > 1:
        if cycles == max_cycles:
            raise ConvergenceError(
                "Can not optimize n = " + str(n) + " at x = " + str(x)
                + " in " + str(max_cycles) + " cycles"
            )
        before = value
        for i in range(1, n):
            left, right = points[i - 1], points[i + 1]
            hi = min(right, left + kind.g(left) * STEP_LIMIT)
            lo = kind.inverse_reach(right, left)
            if not hi > lo:
                continue

            def local(k, left=left, right=right):
                return _term(kind, left, k) + _term(kind, k, right)

            current = local(points[i])
            k, fk = golden_section(local, lo, hi)
            if not (fk < current and left < k < right):
                continue
            # over-relaxed move, kept only when feasible and still improving
            over = points[i] + omega * (k - points[i])
            if omega > 1.0 and lo <= over <= hi and left < over < right and local(over) < current:
                k = over
            points[i] = k
        value = half_sum(points, kind)
        cycles += 1
        if before - value < tol:
            break
    partition = PartitionPoints(x, tuple(points))
    return OptimizationResult(
        min(value, math.pi / 2), partition, n, None, True, value, value > math.pi / 2, kind
    )
