import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, replace
from functools import partial
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from subspace.bounds import BoundKind, bound_function
from subspace.core.env import settings
from subspace.linalg import (
    OrthogonalProjection,
    eigen_decompose,
    generator,
    maximal_angle,
    operator_norm,
    spectral_projection,
)
from subspace.utils.errors import ScenarioError
from subspace.utils.messages import msg_end, msg_start, msg_warning
from .regimes import Regime, check_enclosures, regime_for, select_omega, shift
from .scenarios import (
    Layout,
    PerturbationKind,
    ScenarioSpec,
    assemble,
    build_perturbation,
    make_scenario,
)

MARGIN_TOLERANCE = 1e-9
SELECTION_TOLERANCE = 1e-9
SCHEMA_VERSION = 1
STRENGTH_RANGE = (0.01, 0.98)
UNBOUNDED_STRENGTH = 10.0


@dataclass(frozen=True)
class BoundCheck:
    kind: BoundKind
    value: float
    margin: float
    asserted: bool

    @property
    def passed(self) -> bool:
        if not self.asserted:
            return True
        return math.isfinite(self.margin) and self.margin >= -MARGIN_TOLERANCE


@dataclass(frozen=True)
class TrialRecord:
    """
    Exact angle, bound values and enclosure checks of one random instance
    """

    trial: int
    seed: int
    dim: int
    d: float
    norm_v: float
    x: float
    theta: float
    epsilon: Optional[float]
    gap_length: float
    checks: Tuple[BoundCheck, ...]
    enclosure_ok: bool
    gap_ok: Optional[bool]

    @property
    def failed(self) -> bool:
        if not self.enclosure_ok or self.gap_ok is False:
            return True
        return not all(c.passed for c in self.checks)

    @property
    def min_margin(self) -> float:
        margins = [c.margin for c in self.checks if c.asserted]
        return min(margins) if margins else math.inf

    def row(self) -> Dict:
        row = {
            "trial": self.trial,
            "seed": self.seed,
            "dim": self.dim,
            "d": self.d,
            "norm_v": self.norm_v,
            "x": self.x,
            "theta": self.theta,
            "epsilon": self.epsilon,
            "gap_length": self.gap_length,
            "enclosure_ok": self.enclosure_ok,
            "gap_ok": self.gap_ok,
            "failed": self.failed,
        }
        for c in self.checks:
            row[c.kind.value] = c.value
            row[c.kind.value + "_margin"] = c.margin
        return row


def _finite(value):
    if isinstance(value, float) and not math.isfinite(value):
        return None
    return value


@dataclass(frozen=True)
class VerificationReport:
    """
    Trial records of a scenario or of a regime suite, ordered by trial
    index
    """

    scenario: str
    seed: int
    records: Tuple[TrialRecord, ...]

    @property
    def trials(self) -> int:
        return len(self.records)

    @property
    def failure_count(self) -> int:
        return sum(1 for r in self.records if r.failed)

    @property
    def passed(self) -> bool:
        return self.failure_count == 0

    @property
    def min_margin(self) -> float:
        return min((r.min_margin for r in self.records), default=math.inf)

    def to_frame(self) -> pd.DataFrame:
        """
        One row per trial
        """
        return pd.DataFrame([r.row() for r in self.records])

    def to_dict(self) -> Dict:
        records = []
        for r in self.records:
            rec = {k: _finite(v) for k, v in asdict(r).items() if k != "checks"}
            rec["bounds"] = [
                {
                    "kind": c.kind.value,
                    "value": c.value,
                    "margin": c.margin,
                    "asserted": c.asserted,
                }
                for c in r.checks
            ]
            rec["failed"] = r.failed
            records.append(rec)
        return {
            "schema_version": SCHEMA_VERSION,
            "scenario": self.scenario,
            "seed": self.seed,
            "trials": self.trials,
            "records": records,
            "aggregates": {
                "min_margin": _finite(self.min_margin),
                "failures": self.failure_count,
            },
        }


def evaluate_bounds(regime: Regime, x: float, theta: float) -> Tuple[BoundCheck, ...]:
    """
    Every bound of the regime whose domain contains ``x``, with its margin
    over ``theta``
    """
    checks = []
    for kind, asserted in regime.applicable(x):
        value = bound_function(kind).upper(x)
        checks.append(BoundCheck(kind, value, value - theta, asserted))
    return tuple(checks)


def run_trial(spec: ScenarioSpec, trial: int = 0, solver: str = None) -> TrialRecord:
    """
    Builds ``H = A + V`` for the scenario, computes the exact angle and
    checks every applicable bound
    """
    regime = regime_for(spec.layout, spec.perturbation)
    a, partition, p = assemble(spec, solver)
    v = build_perturbation(spec, p, solver)
    ed = eigen_decompose(a + v, solver)
    norm_v = operator_norm(v, solver) if spec.strength > 0 else 0.0
    d = partition.d
    tol = SELECTION_TOLERANCE * max(1.0, ed.norm)
    omega = select_omega(regime, ed, partition, norm_v, tol)
    q = spectral_projection(ed, omega)
    theta = maximal_angle(p, q, solver)
    x = norm_v / d
    enclosure_ok, gap_ok = check_enclosures(regime, ed, omega, partition, norm_v, tol)
    return TrialRecord(
        trial=trial,
        seed=spec.seed,
        dim=spec.dim,
        d=d,
        norm_v=norm_v,
        x=x,
        theta=theta,
        epsilon=shift(regime, norm_v, d),
        gap_length=spec.gap_length,
        checks=evaluate_bounds(regime, x, theta),
        enclosure_ok=enclosure_ok,
        gap_ok=gap_ok,
    )


def trial_seeds(seed: int, trials: int) -> List[int]:
    """
    Seeds of the trials, spawned from ``seed``: trial ``t`` gets the same
    seed whatever the number of workers
    """
    children = np.random.SeedSequence(seed).spawn(trials)
    return [int(c.generate_state(1, np.uint64)[0]) for c in children]


def _run_all(jobs: Sequence[Callable[[], TrialRecord]], workers: int = None) -> Tuple[TrialRecord, ...]:
    workers = workers or settings.workers
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return tuple(pool.map(lambda job: job(), jobs))
    return tuple(job() for job in jobs)


def _report(name: str, seed: int, records: Tuple[TrialRecord, ...]) -> VerificationReport:
    report = VerificationReport(name, seed, records)
    for r in records:
        if r.failed:
            msg_warning("Trial", r.trial, "of", name, "failed, seed", r.seed)
    return report


def verify_bounds(
    spec: ScenarioSpec, trials: int, solver: str = None, workers: int = None
) -> VerificationReport:
    """
    Runs ``trials`` random instances of a scenario: the levels stay, the
    frame and the perturbation are redrawn from seeds derived from
    ``spec.seed``

    :param spec: the scenario
    :type spec: ``ScenarioSpec``
    :param trials: number of instances
    :type trials: ``int``
    :param solver: eigensolver, **default**: the ``SUBSPACE_EIGENSOLVER``
        setting
    :type solver: ``str`` *optional*
    :param workers: number of threads, **default**: the
        ``SUBSPACE_WORKERS`` setting
    :type workers: ``int`` *optional*
    :rtype: ``VerificationReport``
    :raises ScenarioError: when the strength is past the regime threshold

    :example: ``verify_bounds(make_scenario("ground-state", "generic", 0.4, 6, 7), 100)``
    """
    regime = regime_for(spec.layout, spec.perturbation)
    if not regime.admits(spec.strength):
        raise ScenarioError(
            "Strength " + str(spec.strength) + " is past the threshold "
            + str(regime.threshold) + " of " + regime.name
        )
    if trials < 1:
        raise ScenarioError("At least one trial is needed")
    msg_start("Verifying", trials, "trials of", regime.name)
    jobs = [
        partial(run_trial, replace(spec, seed=s), t, solver)
        for t, s in enumerate(trial_seeds(spec.seed, trials))
    ]
    report = _report(regime.name, spec.seed, _run_all(jobs, workers))
    msg_end("Failures:", report.failure_count)
    return report


def verify_regime(
    layout: Layout,
    perturbation: PerturbationKind,
    trials: int,
    seed: int,
    dims: Tuple[int, int] = (2, 40),
    solver: str = None,
    workers: int = None,
) -> VerificationReport:
    """
    Regime suite: each trial draws a dimension uniformly in ``dims`` and a
    strength log-uniformly in ``[0.01, 0.98]`` times the regime threshold
    (10 when the regime admits any strength)
    """
    regime = regime_for(layout, perturbation)
    lo, hi = max(dims[0], regime.layout.min_dim), dims[1]
    if hi < lo:
        raise ScenarioError("No admissible dimension in " + str(dims) + " for " + regime.name)
    limit = regime.threshold if regime.threshold is not None else UNBOUNDED_STRENGTH
    rng = generator(seed)
    sizes = rng.integers(lo, hi + 1, size=trials)
    strengths = limit * np.exp(rng.uniform(*np.log(STRENGTH_RANGE), size=trials))
    msg_start("Verifying", trials, "random trials of", regime.name)
    jobs = [
        partial(
            run_trial,
            make_scenario(regime.layout, regime.perturbation, float(strengths[t]), int(sizes[t]), s),
            t,
            solver,
        )
        for t, s in enumerate(trial_seeds(seed, trials))
    ]
    report = _report(regime.name + " suite", seed, _run_all(jobs, workers))
    msg_end("Failures:", report.failure_count)
    return report


def ground_state_identity_check(trials: int, dim: int, seed: int = 0, solver: str = None) -> float:
    """
    Largest difference between ``arcsin ||P - Q||`` and
    ``arccos |<psi_0, psi_0'>|`` over random ground state instances

    :param trials: number of instances
    :param dim: dimension, at least 2
    :return: the maximal absolute deviation
    """
    if dim < 2:
        raise ScenarioError("The ground state check needs dim >= 2, got " + str(dim))
    rng = generator(seed)
    strengths = rng.uniform(0.0, 0.49, size=trials)
    worst = 0.0
    for t, s in enumerate(trial_seeds(seed, trials)):
        spec = make_scenario(Layout.GROUND_STATE, PerturbationKind.GENERIC, float(strengths[t]), dim, s)
        a, _, p = assemble(spec, solver)
        ed = eigen_decompose(a + build_perturbation(spec, p, solver), solver)
        angle, overlap_angle = rank_one_angles(_unit_vector(p.matrix), ed.eigenvectors[:, 0], solver)
        worst = max(worst, abs(angle - overlap_angle))
    return worst


def rank_one_angles(psi: np.ndarray, phi: np.ndarray, solver: str = None) -> Tuple[float, float]:
    """
    ``arcsin ||P - Q||`` and ``arccos |<psi, phi>|`` for the projections
    onto two unit vectors
    """
    psi = np.asarray(psi, dtype=np.complex128)
    phi = np.asarray(phi, dtype=np.complex128)
    p = OrthogonalProjection(np.outer(psi, psi.conj()), 1)
    q = OrthogonalProjection(np.outer(phi, phi.conj()), 1)
    overlap = min(abs(np.vdot(psi, phi)), 1.0)
    return maximal_angle(p, q, solver), math.acos(overlap)


def _unit_vector(rank_one: np.ndarray) -> np.ndarray:
    k = int(np.argmax(np.abs(np.diag(rank_one))))
    col = rank_one[:, k]
    return col / np.linalg.norm(col)
