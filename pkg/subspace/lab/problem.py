"""
Bounds for a given pair ``(A, V)`` and a selection of eigenvalues of A
"""
from dataclasses import dataclass
from typing import Dict, Iterable, Optional, Tuple

from subspace.linalg import (
    HermitianMatrix,
    SpectralPartition,
    anticommutator_residual,
    eigen_decompose,
    make_partition,
    maximal_angle,
    spectral_projection,
)
from subspace.utils.errors import ScenarioError
from .regimes import Regime, check_enclosures, regime_for, select_omega, shift
from .scenarios import Layout, PerturbationKind
from .verify import SCHEMA_VERSION, SELECTION_TOLERANCE, BoundCheck, evaluate_bounds

OFF_DIAGONAL_TOLERANCE = 1e-10


@dataclass(frozen=True)
class ProblemReport:
    """
    Detected regime, exact angle and applicable bounds of a perturbation
    problem

    :param swapped: sigma and Sigma were exchanged to match the layout;
        the angle is unchanged since ``||P - Q|| = ||P^perp - Q^perp||``
    """

    dim: int
    sigma: Tuple[int, ...]
    omega: Tuple[int, ...]
    d: float
    norm_v: float
    x: float
    residual: float
    regime: Regime
    swapped: bool
    theta: float
    epsilon: Optional[float]
    checks: Tuple[BoundCheck, ...]
    enclosure_ok: bool
    gap_ok: Optional[bool]

    @property
    def off_diagonal(self) -> bool:
        return self.regime.perturbation is PerturbationKind.OFF_DIAGONAL

    @property
    def tightest(self) -> BoundCheck:
        return min((c for c in self.checks if c.asserted), key=lambda c: c.value)

    def to_dict(self) -> Dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "dim": self.dim,
            "sigma": list(self.sigma),
            "omega": list(self.omega),
            "d": self.d,
            "norm_v": self.norm_v,
            "x": self.x,
            "regime": {
                "perturbation": self.regime.perturbation.value,
                "layout": self.regime.layout.value,
                "swapped": self.swapped,
                "anticommutator_residual": self.residual,
            },
            "theta": self.theta,
            "epsilon": self.epsilon,
            "bounds": [
                {"kind": c.kind.value, "value": c.value, "margin": c.margin, "asserted": c.asserted}
                for c in self.checks
            ],
            "tightest": self.tightest.kind.value,
            "enclosure_ok": self.enclosure_ok,
            "gap_ok": self.gap_ok,
        }


def _swap(p: SpectralPartition) -> SpectralPartition:
    return SpectralPartition(p.complement, p.sigma, p.complement_values, p.sigma_values, p.d)


def detect_layout(partition: SpectralPartition) -> Tuple[Layout, bool]:
    """
    Layout of sigma and Sigma, and whether the sets must be exchanged
    for sigma to be the set lying below or inside a gap

    :example: ``detect_layout(make_partition(ed, [0]))``
    """
    s, t = partition.sigma_values, partition.complement_values
    if max(s) < min(t):
        return Layout.SUBORDINATED, False
    if max(t) < min(s):
        return Layout.SUBORDINATED, True
    if not any(min(s) < v < max(s) for v in t):
        return Layout.FINITE_GAP, False
    if not any(min(t) < v < max(t) for v in s):
        return Layout.FINITE_GAP, True
    return Layout.INTERLACED, False


def analyze(
    a: HermitianMatrix, v: HermitianMatrix, sigma: Iterable[int], solver: str = None
) -> ProblemReport:
    """
    Detects the regime of ``H = A + V``, computes the exact angle between
    the spectral subspaces and every applicable bound

    :param a: the unperturbed operator
    :type a: ``HermitianMatrix``
    :param v: the perturbation
    :type v: ``HermitianMatrix``
    :param sigma: indices of eigenvalues of ``A`` (ascending order)
    :type sigma: ``Iterable[int]``
    :rtype: ``ProblemReport``
    :raises ConfigurationError: when sigma is not isolated
    :raises ScenarioError: when no bound applies at this strength
    """
    a.check_dim(v)
    ed_a = eigen_decompose(a, solver)
    partition = make_partition(ed_a, sigma)
    p = spectral_projection(ed_a, partition.sigma)
    norm_v = eigen_decompose(v, solver).norm
    residual = anticommutator_residual(v, p)
    if residual <= OFF_DIAGONAL_TOLERANCE * norm_v:
        kind = PerturbationKind.OFF_DIAGONAL
    else:
        kind = PerturbationKind.GENERIC
    layout, swapped = detect_layout(partition)
    if swapped:
        partition, p = _swap(partition), p.complement()
    regime = regime_for(layout, kind)
    x = norm_v / partition.d
    if not regime.admits(x):
        raise ScenarioError(
            "No applicable bound: ||V||/d = " + str(x) + " is past the threshold "
            + str(regime.threshold) + " of " + regime.name
        )
    ed = eigen_decompose(a + v, solver)
    tol = SELECTION_TOLERANCE * max(1.0, ed.norm)
    omega = select_omega(regime, ed, partition, norm_v, tol)
    theta = maximal_angle(p, spectral_projection(ed, omega), solver)
    checks = evaluate_bounds(regime, x, theta)
    if not any(c.asserted for c in checks):
        raise ScenarioError("No applicable bound at ||V||/d = " + str(x) + " for " + regime.name)
    enclosure_ok, gap_ok = check_enclosures(regime, ed, omega, partition, norm_v, tol)
    return ProblemReport(
        dim=a.dim,
        sigma=partition.complement if swapped else partition.sigma,
        omega=tuple(k for k in range(a.dim) if k not in omega) if swapped else omega,
        d=partition.d,
        norm_v=norm_v,
        x=x,
        residual=residual,
        regime=regime,
        swapped=swapped,
        theta=theta,
        epsilon=shift(regime, norm_v, partition.d),
        checks=checks,
        enclosure_ok=enclosure_ok,
        gap_ok=gap_ok,
    )
