import math
from dataclasses import replace
from functools import lru_cache
from typing import List, Optional, Sequence

from subspace.core.env import settings
from subspace.utils.errors import ConvergenceError, OracleError, PartitionError
from subspace.utils.messages import msg_warning
from .denominators import DenominatorKind
from .descent import OptimizationResult, optimize_fixed_n
from .oracle import dp_path
from .partition import EDGE_GUARD, PartitionPoints, check_domain, n_min

N_EXTRA = 25
STALE_LIMIT = 3
IMPROVEMENT = 1e-10
BOUND_RESOLUTION = 1024
ANCHOR_SPACING = 32


def _capped(
    result: OptimizationResult,
    dp_value: Optional[float],
    converged: bool,
    candidates: Sequence[PartitionPoints],
) -> OptimizationResult:
    raw = result.raw_value
    return replace(
        result,
        value=min(raw, math.pi / 2),
        dp_value=dp_value,
        converged=converged,
        capped=raw > math.pi / 2,
        candidates=tuple(candidates),
    )


def warm_seed(
    hint: Optional[OptimizationResult], x: float, n: int, kind: DenominatorKind
) -> Optional[PartitionPoints]:
    """
    The ``n``-step partition of ``hint`` rescaled to end at ``x``, or
    ``None`` when the hint has no such partition or the rescaled one is
    infeasible
    """
    if hint is None:
        return None
    for p in reversed(hint.candidates):
        if p.n != n or p.x <= 0.0:
            continue
        scale = x / p.x
        try:
            seed = PartitionPoints(x, tuple(q * scale for q in p.points[:-1]) + (x,))
            seed.check(kind)
        except PartitionError:
            return None
        return seed
    return None


def estimating_function(
    x: float,
    kind: DenominatorKind,
    max_n: int = None,
    oracle_grid: int = None,
    hint: OptimizationResult = None,
) -> OptimizationResult:
    """
    Infimum of the half-sum over ``n`` and the partition points

    :param x: the relative perturbation strength ``||V||/d``
    :type x: ``float``
    :param kind: the denominator
    :type kind: ``DenominatorKind``
    :param max_n: cap on the number of steps, **default**: ``None`` (full
        sweep, with the grid oracle attached)
    :type max_n: ``int`` *optional*
    :param oracle_grid: number of grid intervals of the oracle, **default**:
        the ``SUBSPACE_ORACLE_GRID`` setting
    :type oracle_grid: ``int`` *optional*
    :param hint: a result at a nearby ``x`` whose partitions seed the
        descent, **default**: ``None`` (g-proportional seeds)
    :type hint: ``OptimizationResult`` *optional*
    :return: the best partition found, its value capped at pi/2
    :rtype: ``OptimizationResult``
    :raises DomainError: when ``x`` is outside ``[0, kappa_max - 1e-6]``

    :example: ``estimating_function(0.3, DenominatorKind.GENERIC).value``
    """
    check_domain(x, kind)
    if x == 0.0:
        return replace(optimize_fixed_n(0.0, 0, kind), dp_value=0.0)
    first = n_min(x, kind)
    last = first + N_EXTRA
    if max_n is not None:
        if max_n < first:
            raise PartitionError(
                "Can not reach x = " + str(x) + " in " + str(max_n) + " steps, at least "
                + str(first) + " are needed"
            )
        last = min(last, max_n)
    best, stale, converged = None, 0, True
    candidates: List[PartitionPoints] = []
    for n in range(first, last + 1):
        seed = warm_seed(hint, x, n, kind)
        try:
            result = optimize_fixed_n(x, n, kind, seed=None if seed is None else seed.points)
        except ConvergenceError as e:
            msg_warning("Skipping n =", n, "at x =", x, ":", e)
            converged = False
            continue
        candidates.append(result.partition)
        if best is None or result.raw_value < best.raw_value - IMPROVEMENT:
            best, stale = result, 0
        else:
            if result.raw_value < best.raw_value:
                best = result
            stale += 1
            if stale == STALE_LIMIT:
                break
    if best is None:
        raise ConvergenceError("Can not optimize any partition of [0, " + str(x) + "]")
    if max_n is not None:
        return _capped(best, None, converged, candidates)
    grid = oracle_grid or settings.oracle_grid
    try:
        dp_value, path = dp_path(x, kind, grid)
    except OracleError:
        return _capped(best, None, converged, candidates)
    if dp_value < best.raw_value:
        # the sweep stopped in a worse basin than the oracle path
        try:
            reseeded = optimize_fixed_n(x, len(path) - 1, kind, seed=path)
            if reseeded.raw_value < best.raw_value:
                best = reseeded
                candidates.append(reseeded.partition)
        except (ConvergenceError, PartitionError) as e:
            msg_warning("Can not refine oracle path at x =", x, ":", e)
    return _capped(best, dp_value, converged, candidates)


def _grid_x(key: int, kind: DenominatorKind) -> float:
    return min(key / BOUND_RESOLUTION, kind.kappa_max - EDGE_GUARD)


@lru_cache(maxsize=256)
def _anchor(key: int, kind: DenominatorKind) -> OptimizationResult:
    return estimating_function(_grid_x(key, kind), kind)


@lru_cache(maxsize=4096)
def _cached(key: int, kind: DenominatorKind) -> float:
    # warm started from the next anchor above, so every key sees the same seed
    anchor = -(-key // ANCHOR_SPACING) * ANCHOR_SPACING
    if anchor == key:
        return _anchor(key, kind).value
    return estimating_function(_grid_x(key, kind), kind, hint=_anchor(anchor, kind)).value


def optimized_bound(x: float, kind: DenominatorKind) -> float:
    """
    Cached value of ``estimating_function`` with ``x`` rounded up to a
    multiple of 1/1024. The function is nondecreasing, so the rounded
    value still bounds the angle at ``x``
    """
    check_domain(x, kind)
    if x == 0.0:
        return 0.0
    return _cached(int(math.ceil(x * BOUND_RESOLUTION)), kind)
