from .denominators import STEP_LIMIT, DenominatorKind
from .descent import OptimizationResult, golden_section, optimize_fixed_n, relaxation
from .estimating import N_EXTRA, estimating_function, optimized_bound, warm_seed
from .oracle import dp_oracle, dp_path
from .partition import PartitionPoints, check_domain, n_min, objective, seed_partition
from .threshold import bisect, solve_threshold
