from .constants import c_s, kmm_saturation, ms_threshold
from .functions import (
    BoundFunction,
    BoundKind,
    apriori_tantheta,
    bound_function,
    dk_sin2theta,
    dk_tan2theta,
    gen_opt,
    generic_sin2theta,
    kmm_argument,
    m_kmm,
    m_ms,
    ms_argument,
    off_opt,
)
from .quadrature import adaptive_simpson, midpoint_rule
from .shift import ShiftBound, epsilon_closed_form, epsilon_shift
