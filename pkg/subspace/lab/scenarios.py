"""
Finite Hermitian model problems: level layouts, random frames and
perturbations
"""
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

import numpy as np

from subspace.linalg import (
    HermitianMatrix,
    OrthogonalProjection,
    SpectralPartition,
    generator,
    operator_norm,
    random_hermitian,
    random_unitary,
)
from subspace.utils.errors import ScenarioError
from subspace.utils.messages import msg_warning

CLUSTER_SPACING = 0.01
CLUSTER_SIZE = 10


class Layout(Enum):
    GROUND_STATE = "ground-state"
    FINITE_GAP = "finite-gap"
    INTERLACED = "interlaced"
    SUBORDINATED = "subordinated"

    @property
    def min_dim(self) -> int:
        if self in (Layout.FINITE_GAP, Layout.INTERLACED):
            return 3
        return 2


class PerturbationKind(Enum):
    GENERIC = "generic"
    OFF_DIAGONAL = "off-diagonal"


def _levels(values) -> Tuple[float, ...]:
    return tuple(float(v) for v in values)


@dataclass(frozen=True)
class ScenarioSpec:
    """
    Level sets of the unperturbed operator and the perturbation recipe

    :param layout: mutual position of sigma and Sigma
    :param sigma_levels: the levels of sigma
    :param complement_levels: the levels of Sigma
    :param perturbation: generic or off-diagonal
    :param strength: ``||V||`` as a multiple of ``d``
    :param seed: 64-bit seed of the random frame and perturbation
    """

    layout: Layout
    sigma_levels: Tuple[float, ...]
    complement_levels: Tuple[float, ...]
    perturbation: PerturbationKind
    strength: float
    seed: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "layout", Layout(self.layout))
        object.__setattr__(self, "perturbation", PerturbationKind(self.perturbation))
        object.__setattr__(self, "sigma_levels", _levels(self.sigma_levels))
        object.__setattr__(self, "complement_levels", _levels(self.complement_levels))
        if int(self.seed) < 0:
            raise ScenarioError("The seed must be nonnegative, got " + str(self.seed))
        if not self.strength >= 0 or not np.isfinite(self.strength):
            raise ScenarioError("The strength must be finite and nonnegative, got " + str(self.strength))
        if len(self.sigma_levels) == 0 or len(self.complement_levels) == 0:
            raise ScenarioError("Both sigma and Sigma need levels")
        if self.d <= 0:
            raise ScenarioError("sigma and Sigma must be separated, d = " + str(self.d))
        _check_layout(self.layout, self.sigma_levels, self.complement_levels)

    @property
    def dim(self) -> int:
        return len(self.sigma_levels) + len(self.complement_levels)

    @property
    def d(self) -> float:
        s = np.asarray(self.sigma_levels)
        t = np.asarray(self.complement_levels)
        return float(np.abs(np.subtract.outer(s, t)).min())

    @property
    def gap_length(self) -> float:
        """
        Length ``D`` of the gap of Sigma holding sigma, ``inf`` when sigma
        lies below Sigma and ``nan`` for interlaced levels
        """
        lo, hi = min(self.sigma_levels), max(self.sigma_levels)
        below = [t for t in self.complement_levels if t < lo]
        above = [t for t in self.complement_levels if t > hi]
        if any(lo < t < hi for t in self.complement_levels):
            return float("nan")
        if not above:
            return float("inf")
        if not below:
            return float("inf")
        return min(above) - max(below)


def _check_layout(layout: Layout, sigma: Tuple[float, ...], rest: Tuple[float, ...]) -> None:
    lo, hi = min(sigma), max(sigma)
    if layout is Layout.GROUND_STATE:
        ok = len(sigma) == 1 and hi < min(rest)
    elif layout is Layout.SUBORDINATED:
        ok = hi < min(rest)
    elif layout is Layout.FINITE_GAP:
        ok = (
            any(t < lo for t in rest)
            and any(t > hi for t in rest)
            and not any(lo < t < hi for t in rest)
        )
    else:
        levels = sorted(sigma + rest)
        k = len(sigma)
        ok = k >= 2 and sorted(sigma) == [levels[2 * j] for j in range(k)]
    if not ok:
        raise ScenarioError("Levels do not match the " + layout.value + " layout")


def _top(first: float, count: int, d: float) -> list:
    """
    ``count`` levels from ``first`` upwards: spaced by d, then a dense
    cluster standing in for essential spectrum
    """
    cluster = min(CLUSTER_SIZE, count // 2)
    discrete = count - cluster
    levels = [first + j * d for j in range(discrete)]
    start = first + discrete * d
    levels += [start + j * CLUSTER_SPACING * d for j in range(cluster)]
    return levels


def default_levels(layout: Layout, dim: int, d: float = 1.0) -> Tuple[Tuple[float, ...], Tuple[float, ...]]:
    """
    Level sets of a layout in dimension ``dim`` with separation ``d``

    :return: sigma levels and Sigma levels
    :raises ScenarioError: when ``dim`` is too small for the layout

    :example: ``default_levels(Layout.INTERLACED, 5)``
    """
    layout = Layout(layout)
    if dim < layout.min_dim:
        raise ScenarioError(
            "The " + layout.value + " layout needs dim >= " + str(layout.min_dim) + ", got " + str(dim)
        )
    if not d > 0:
        raise ScenarioError("d must be positive, got " + str(d))
    if layout is Layout.GROUND_STATE:
        sigma = [0.0]
        rest = _top(d, dim - 1, d)
    elif layout is Layout.SUBORDINATED:
        s = max(1, dim // 4)
        sigma = [1.5 * d * (j - s + 1) for j in range(s)]
        rest = _top(d, dim - s, d)
    elif layout is Layout.FINITE_GAP:
        s = max(1, (dim - 2) // 4)
        b = max(1, (dim - s) // 3)
        sigma = [1.5 * d * j for j in range(s)]
        below = [-d * (b - j) for j in range(b)]
        rest = below + _top(sigma[-1] + d, dim - s - b, d)
    else:
        k = max(1, (dim - 1) // 4)
        sigma = [2 * j * d for j in range(k + 1)]
        odd = [(2 * j + 1) * d for j in range(k)]
        rest = odd + _top((2 * k + 1) * d, dim - 2 * k - 1, d)
    return _levels(sigma), _levels(rest)


def make_scenario(
    layout: Layout, perturbation: PerturbationKind, strength: float, dim: int, seed: int, d: float = 1.0
) -> ScenarioSpec:
    sigma, rest = default_levels(layout, dim, d)
    return ScenarioSpec(layout, sigma, rest, perturbation, strength, seed)


def _streams(seed: int) -> Tuple[np.random.Generator, np.random.Generator]:
    frame, perturbation = np.random.SeedSequence(seed).spawn(2)
    return generator(frame), generator(perturbation)


def assemble(spec: ScenarioSpec, solver: str = None) -> Tuple[HermitianMatrix, SpectralPartition, OrthogonalProjection]:
    """
    ``A = U diag(levels) U*``, the partition and the spectral projection
    of sigma, read off the frame ``U``
    """
    rng, _ = _streams(spec.seed)
    u = random_unitary(rng, spec.dim, solver)
    levels = np.array(spec.sigma_levels + spec.complement_levels)
    a = HermitianMatrix.diagonal(levels).conjugated(u)
    order = np.argsort(levels, kind="stable")
    ns = len(spec.sigma_levels)
    sigma = tuple(int(k) for k in np.nonzero(order < ns)[0])
    rest = tuple(int(k) for k in np.nonzero(order >= ns)[0])
    values = levels[order]
    partition = SpectralPartition(
        sigma, rest, _levels(values[list(sigma)]), _levels(values[list(rest)]), spec.d
    )
    us = u[:, :ns]
    p = OrthogonalProjection(us @ us.conj().T, ns)
    return a, partition, p


def build_unperturbed(spec: ScenarioSpec, solver: str = None) -> Tuple[HermitianMatrix, SpectralPartition]:
    """
    Unperturbed operator in a random frame and its spectral partition.
    Partition indices refer to the ascending eigenvalues of ``A``
    """
    a, partition, _ = assemble(spec, solver)
    return a, partition


def build_perturbation(spec: ScenarioSpec, p: OrthogonalProjection, solver: str = None) -> HermitianMatrix:
    """
    Random perturbation with ``||V|| = strength * d``

    - GENERIC: a rescaled random Hermitian matrix
    - OFF_DIAGONAL: ``P W P^perp + P^perp W P`` for a random Hermitian W,
      rescaled; it anticommutes with ``P - P^perp``

    :param spec: the scenario
    :param p: the spectral projection of sigma
    """
    if p.dim != spec.dim:
        raise ScenarioError("Projection dimension " + str(p.dim) + " does not match " + str(spec.dim))
    if spec.strength == 0:
        return HermitianMatrix.zeros(spec.dim)
    _, rng = _streams(spec.seed)
    w = random_hermitian(rng, spec.dim)
    if spec.perturbation is PerturbationKind.OFF_DIAGONAL:
        q = np.eye(spec.dim) - p.matrix
        block = p.matrix @ w.entries @ q
        w = HermitianMatrix(block + block.conj().T)
    norm = operator_norm(w, solver)
    if norm == 0.0:
        msg_warning("Perturbation vanishes for seed", spec.seed, ": using V = 0")
        return HermitianMatrix.zeros(spec.dim)
    return w.scaled(spec.strength * spec.d / norm)
