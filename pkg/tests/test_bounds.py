import math

import numpy as np
import pytest

from subspace.bounds import (
    BoundKind,
    adaptive_simpson,
    apriori_tantheta,
    bound_function,
    c_s,
    dk_sin2theta,
    dk_tan2theta,
    epsilon_closed_form,
    epsilon_shift,
    generic_sin2theta,
    kmm_argument,
    kmm_saturation,
    m_kmm,
    m_ms,
    ms_argument,
    ms_threshold,
    midpoint_rule,
)
from subspace.bounds.functions import _ms_integrand
from subspace.utils.errors import ConvergenceError, DomainError

CLOSED_FORMS = [
    BoundKind.DK_SIN2,
    BoundKind.GENERIC_SIN2,
    BoundKind.DK_TAN2,
    BoundKind.APRIORI_TAN,
    BoundKind.KMM,
    BoundKind.MS,
]


class TestClosedForms:
    def test_dk_sin2theta(self):
        assert dk_sin2theta(0) == 0
        assert dk_sin2theta(0.25) == pytest.approx(math.pi / 12)
        assert dk_sin2theta(0.5 - 1e-8) < math.pi / 4
        with pytest.raises(DomainError):
            dk_sin2theta(0.5)

    def test_generic_sin2theta(self):
        assert generic_sin2theta(0) == 0
        assert generic_sin2theta(1 / math.pi) == pytest.approx(math.pi / 4)
        assert generic_sin2theta(0.2) == pytest.approx(0.340302, abs=1e-6)
        with pytest.raises(DomainError):
            generic_sin2theta(0.32)

    def test_dk_tan2theta(self):
        assert dk_tan2theta(0) == 0
        assert dk_tan2theta(0.5) == pytest.approx(math.pi / 8)
        assert dk_tan2theta(1e6) < math.pi / 4
        with pytest.raises(DomainError):
            dk_tan2theta(-1.0)

    def test_apriori_tantheta(self):
        assert apriori_tantheta(0) == 0
        assert apriori_tantheta(1) == pytest.approx(math.pi / 4)
        assert apriori_tantheta(1.4) == pytest.approx(0.950547, abs=1e-6)
        with pytest.raises(DomainError):
            apriori_tantheta(math.sqrt(2))

    def test_m_kmm(self):
        assert m_kmm(0) == 0
        expected = math.asin(0.2 * math.pi / (3 - math.sqrt(1.16)))
        assert m_kmm(0.2) == pytest.approx(expected, abs=1e-14)
        assert m_kmm(0.6) == pytest.approx(math.pi / 2)
        with pytest.raises(DomainError):
            m_kmm(0.9)

    def test_kmm_saturation(self):
        x = kmm_saturation()
        assert x == pytest.approx(0.5033, abs=1e-4)
        assert kmm_argument(x) == pytest.approx(1.0, abs=1e-12)
        assert m_kmm(x - 1e-4) < math.pi / 2

    def test_m_ms(self):
        assert m_ms(0) == 0
        assert m_ms(0.7) == pytest.approx(math.pi / 2)
        with pytest.raises(DomainError):
            m_ms(math.sqrt(3) / 2 - 1e-7)

    def test_ms_threshold(self):
        x = ms_threshold()
        assert x == pytest.approx(0.67598, abs=1e-4)
        assert ms_argument(x) == pytest.approx(1.0, abs=1e-8)

    def test_c_s(self):
        assert c_s() == pytest.approx(0.454839, abs=1e-6)


class TestQuadrature:
    def test_simpson_against_midpoint(self):
        simpson, err = adaptive_simpson(_ms_integrand, 0.0, 0.3, 1e-12)
        mid = midpoint_rule(lambda t: 1.0 / (2.0 - np.sqrt(1.0 + 4.0 * t * t)), 0.0, 0.3, 200000)
        assert err <= 1e-12
        assert simpson == pytest.approx(mid, abs=1e-10)
        assert m_ms(0.3) == pytest.approx(math.asin(0.5 * math.pi * simpson), abs=1e-14)

    def test_polynomial_exact(self):
        value, _ = adaptive_simpson(lambda t: t ** 3 - t, -1.0, 2.0)
        assert value == pytest.approx(2.25, abs=1e-13)

    def test_reversed_bounds(self):
        value, _ = adaptive_simpson(math.cos, math.pi / 2, 0.0)
        assert value == pytest.approx(-1.0, abs=1e-12)

    def test_near_singular_endpoint(self):
        ms_argument(math.sqrt(3) / 2 - 1e-6)

    @pytest.mark.parametrize("x", [0.85, 0.86, 0.865, 0.866, math.sqrt(3) / 2 - 1e-6])
    def test_near_singular_arguments(self, x):
        assert 1.0 < ms_argument(x) < math.inf
        assert m_ms(x) == math.pi / 2

    def test_near_singular_is_increasing(self):
        values = [ms_argument(x) for x in (0.85, 0.86, 0.866, math.sqrt(3) / 2 - 1e-6)]
        assert all(a < b for a, b in zip(values, values[1:]))

    def test_simpson_against_midpoint_near_singularity(self):
        simpson, _ = adaptive_simpson(_ms_integrand, 0.5, 0.86, 1e-12)
        mid = midpoint_rule(lambda t: 1.0 / (2.0 - np.sqrt(1.0 + 4.0 * t * t)), 0.5, 0.86, 400000)
        assert simpson == pytest.approx(mid, rel=1e-8)

    def test_integrand_matches_direct_form(self):
        for t in (0.0, 0.2, 0.5, 0.8):
            assert _ms_integrand(t) == pytest.approx(1.0 / (2.0 - math.sqrt(1.0 + 4.0 * t * t)), rel=1e-12)

    def test_depth_exhausted(self):
        with pytest.raises(ConvergenceError):
            adaptive_simpson(lambda t: 1.0 / t if t else 0.0, 0.0, 1.0, 1e-12, max_depth=5)


class TestShift:
    def test_examples(self):
        assert epsilon_shift(0.0, 1.0).epsilon == 0
        assert epsilon_shift(1.0, 1.0).epsilon == pytest.approx((math.sqrt(5) - 1) / 2)
        s = epsilon_shift(math.sqrt(3) / 2 * 0.999999, 1.0)
        assert s.epsilon < 0.5 and s.gap > 0

    def test_closed_form_identity(self):
        for norm_v in np.logspace(-6, 3, 100):
            for d in np.logspace(-3, 3, 100):
                eps = epsilon_shift(norm_v, d).epsilon
                assert abs(eps - epsilon_closed_form(norm_v, d)) <= 1e-12 * d

    def test_rejects_bad_separation(self):
        with pytest.raises(DomainError):
            epsilon_shift(1.0, 0.0)
        with pytest.raises(DomainError):
            epsilon_closed_form(-1.0, 1.0)


@pytest.mark.parametrize("kind", CLOSED_FORMS, ids=lambda k: k.value)
def test_monotone_and_continuous(kind):
    f = bound_function(kind)
    top = 5.0 if math.isinf(f.x_max) else (f.x_max if f.closed else f.x_max - f.guard)
    xs = np.linspace(0.0, top, 1000)
    values = np.array([f(float(x)) for x in xs])
    assert values[0] == 0
    assert np.all(np.diff(values) >= -1e-12)
    # the steepest slope is pi/2 at 0, except near arcsin saturation
    step = xs[1] - xs[0]
    assert np.max(np.diff(values)) <= max(0.1, 4 * step)


def test_domains():
    f = bound_function(BoundKind.GEN_OPT)
    assert f.contains(0.3) and not f.contains(0.5)
    assert bound_function("kmm").kind is BoundKind.KMM
    with pytest.raises(ValueError):
        bound_function("unknown")


def test_upper_dominates_exact():
    f = bound_function(BoundKind.OFF_OPT)
    for x in (0.05, 0.3, 0.61):
        assert f.upper(x) >= f(x) - 1e-12
    g = bound_function(BoundKind.KMM)
    assert g.upper(0.2) == g(0.2)
