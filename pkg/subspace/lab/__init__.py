from .problem import ProblemReport, analyze, detect_layout
from .regimes import Regime, check_enclosures, default_regimes, regime_for, select_omega
from .scenarios import (
    Layout,
    PerturbationKind,
    ScenarioSpec,
    build_perturbation,
    build_unperturbed,
    default_levels,
    make_scenario,
)
from .verify import (
    BoundCheck,
    TrialRecord,
    VerificationReport,
    evaluate_bounds,
    ground_state_identity_check,
    rank_one_angles,
    run_trial,
    verify_bounds,
    verify_regime,
)
