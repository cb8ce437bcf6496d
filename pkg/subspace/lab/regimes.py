"""
Regimes: a layout of the unperturbed levels and a kind of perturbation,
with the strength threshold, the bounds that hold and the rule selecting
the perturbed spectral set omega
"""
import math
from dataclasses import dataclass
from typing import Optional, Tuple

import numpy as np

from subspace.bounds import BoundKind, bound_function, epsilon_shift
from subspace.linalg import (
    EigenDecomposition,
    SpectralPartition,
    select_interval_indices,
    select_perturbed_indices,
)
from subspace.utils.errors import ConfigurationError
from .scenarios import Layout, PerturbationKind

GAP_LAYOUTS = (Layout.GROUND_STATE, Layout.SUBORDINATED, Layout.FINITE_GAP)
GENERIC_BOUNDS = (BoundKind.DK_SIN2, BoundKind.GENERIC_SIN2, BoundKind.GEN_OPT)
OFF_BOUNDS = (BoundKind.KMM, BoundKind.MS, BoundKind.OFF_OPT)
SQRT3_2 = math.sqrt(3) / 2


@dataclass(frozen=True)
class Regime:
    """
    :param threshold: perturbations need ``||V|| < threshold * d``,
        ``None`` when any strength is admitted
    :param asserted: bounds that must hold where their domain allows
    :param recorded: bounds reported without being asserted
    """

    layout: Layout
    perturbation: PerturbationKind
    threshold: Optional[float]
    asserted: Tuple[BoundKind, ...]
    recorded: Tuple[BoundKind, ...] = ()

    @property
    def name(self) -> str:
        return self.layout.value + "/" + self.perturbation.value

    def admits(self, strength: float) -> bool:
        return self.threshold is None or strength < self.threshold

    def applicable(self, x: float) -> Tuple[Tuple[BoundKind, bool], ...]:
        """
        Bounds whose domain contains ``x``, each with its asserted flag
        """
        kinds = [(k, True) for k in self.asserted] + [(k, False) for k in self.recorded]
        return tuple((k, a) for k, a in kinds if bound_function(k).contains(x))


def regime_for(layout: Layout, perturbation: PerturbationKind) -> Regime:
    layout, perturbation = Layout(layout), PerturbationKind(perturbation)
    if perturbation is PerturbationKind.GENERIC:
        if layout is Layout.INTERLACED:
            # sin2theta needs sigma inside a gap of Sigma
            return Regime(layout, perturbation, 0.5, GENERIC_BOUNDS[1:], (BoundKind.DK_SIN2,))
        return Regime(layout, perturbation, 0.5, GENERIC_BOUNDS)
    if layout in (Layout.GROUND_STATE, Layout.SUBORDINATED):
        return Regime(layout, perturbation, None, (BoundKind.DK_TAN2,) + GENERIC_BOUNDS + OFF_BOUNDS)
    if layout is Layout.FINITE_GAP:
        return Regime(
            layout, perturbation, math.sqrt(2), (BoundKind.APRIORI_TAN,) + GENERIC_BOUNDS + OFF_BOUNDS
        )
    return Regime(layout, perturbation, SQRT3_2, OFF_BOUNDS + GENERIC_BOUNDS[1:], (BoundKind.DK_SIN2,))


def default_regimes() -> Tuple[Regime, ...]:
    """
    The regimes of the bound validity suite
    """
    return (
        regime_for(Layout.GROUND_STATE, PerturbationKind.GENERIC),
        regime_for(Layout.INTERLACED, PerturbationKind.GENERIC),
        regime_for(Layout.GROUND_STATE, PerturbationKind.OFF_DIAGONAL),
        regime_for(Layout.SUBORDINATED, PerturbationKind.OFF_DIAGONAL),
        regime_for(Layout.FINITE_GAP, PerturbationKind.OFF_DIAGONAL),
        regime_for(Layout.INTERLACED, PerturbationKind.OFF_DIAGONAL),
    )


def shift(regime: Regime, norm_v: float, d: float) -> Optional[float]:
    """
    ``epsilon_V`` for off-diagonal regimes, ``None`` otherwise
    """
    if regime.perturbation is PerturbationKind.GENERIC:
        return None
    return epsilon_shift(norm_v, d).epsilon


def select_omega(
    regime: Regime, ed: EigenDecomposition, partition: SpectralPartition, norm_v: float, tol: float
) -> Tuple[int, ...]:
    """
    Indices of the eigenvalues of ``H`` originating from sigma

    :raises ConfigurationError: when the selection does not hold exactly
        ``|sigma|`` eigenvalues
    """
    s = partition.sigma_values
    d = partition.d
    eps = shift(regime, norm_v, d)
    if eps is None:
        omega = select_perturbed_indices(ed, s, norm_v if norm_v > 0 else d / 2, tol)
    elif regime.layout in (Layout.GROUND_STATE, Layout.SUBORDINATED):
        omega = select_interval_indices(ed, min(s) - eps, max(s), tol)
    elif regime.layout is Layout.FINITE_GAP:
        omega = select_interval_indices(ed, min(s) - eps, max(s) + eps, tol)
    else:
        omega = select_perturbed_indices(ed, s, eps if eps > 0 else d / 2, tol)
    if len(omega) != len(s):
        raise ConfigurationError(
            "Can not select omega for " + regime.name + ": " + str(len(omega))
            + " eigenvalues captured for " + str(len(s)) + " levels of sigma"
        )
    return omega


def _dist(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return np.abs(np.subtract.outer(a, b)).min(axis=1)


def _empty(lam: np.ndarray, lo: float, hi: float, tol: float) -> bool:
    return not np.any((lam > lo + tol) & (lam < hi - tol))


def check_enclosures(
    regime: Regime,
    ed: EigenDecomposition,
    omega: Tuple[int, ...],
    partition: SpectralPartition,
    norm_v: float,
    tol: float,
) -> Tuple[bool, Optional[bool]]:
    """
    Spectrum enclosures of the regime and, where the layout has one, the
    emptiness of the gap around sigma

    :return: enclosure flag, gap flag (``None`` when there is no gap to
        check)
    """
    lam = ed.eigenvalues
    s = np.asarray(partition.sigma_values)
    t = np.asarray(partition.complement_values)
    rest = [k for k in range(ed.dim) if k not in set(omega)]
    w, big_w = lam[list(omega)], lam[rest]
    d = partition.d
    if regime.perturbation is PerturbationKind.GENERIC:
        levels = np.concatenate([s, t])
        return bool(np.all(_dist(lam, levels) <= norm_v + tol)), None
    eps = shift(regime, norm_v, d)
    ok = True
    if norm_v < SQRT3_2 * d:
        ok &= bool(np.all(_dist(w, s) <= eps + tol))
        if big_w.size:
            ok &= bool(np.all(_dist(big_w, t) <= eps + tol))
            ok &= bool(np.abs(np.subtract.outer(w, big_w)).min() >= d - 2 * eps - tol)
    gap = None
    if regime.layout in (Layout.GROUND_STATE, Layout.SUBORDINATED):
        ok &= bool(w.min() >= s.min() - eps - tol and w.max() <= s.max() + tol)
        gap = _empty(lam, s.max(), t.min(), tol)
    elif regime.layout is Layout.FINITE_GAP and norm_v < math.sqrt(2) * d:
        below, above = t[t < s.min()], t[t > s.max()]
        ok &= bool(lam.min() >= min(s.min(), t.min()) - eps - tol)
        ok &= bool(w.min() >= s.min() - eps - tol and w.max() <= s.max() + eps + tol)
        gap = _empty(lam, below.max(), s.min() - eps, tol) and _empty(lam, s.max() + eps, above.min(), tol)
    return ok, gap
