import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from renewal_bhatt import (GeomMeanLaw, ParetoClass, bhatt_coefficient, g12_eval, g12_quantile,
                           pareto_eval, pareto_quantile)
from renewal_bhatt.distributions import integrate_with_tail
from renewal_bhatt.errors import DomainError

# frozen from a 30-digit mpmath evaluation of sqrt(S1 S2), (h1 + h2)/2 G12, sqrt(p1 p2)
G12_25 = 0.505964425626940693
Q12_15 = 0.0272165526975908678
Q12_25 = 0.0303578655376164416
P12_25 = 0.0286216701119973081
G12_INV_HALF = 25.1984209978974633
C12_GAMMA2 = 0.879671940515262836

positive = st.floats(0.05, 100.0)


class TestPareto:
    def test_density_examples(self):
        c = ParetoClass(10, 1)
        assert pareto_eval(c, 20, "density") == pytest.approx(0.025, rel=1e-15)
        assert pareto_eval(c, 5, "density") == 0.0
        assert pareto_eval(c, 20, "survivor") == 0.5
        assert pareto_eval(c, 20, "hazard") == 0.05

    def test_closed_left_endpoint(self):
        c = ParetoClass(10, 2)
        assert c.density(10.0) == pytest.approx(0.2)
        assert c.survivor(10.0) == 1.0
        assert c.log_density(9.999) == -math.inf

    def test_quantile_examples(self):
        assert pareto_quantile(ParetoClass(10, 1), 0.0) == 10.0
        assert pareto_quantile(ParetoClass(10, 1), 0.9) == pytest.approx(100.0, rel=1e-14)
        assert pareto_quantile(ParetoClass(20, 2), 0.75) == 40.0

    @pytest.mark.parametrize("u", [-0.1, 1.0, 1.5, float("nan")])
    def test_quantile_domain(self, u):
        with pytest.raises(DomainError):
            pareto_quantile(ParetoClass(10, 1), u)

    @pytest.mark.parametrize("alpha,beta", [(0, 1), (-1, 1), (1, 0), (1, -2)])
    def test_invalid_parameters(self, alpha, beta):
        with pytest.raises(DomainError):
            ParetoClass(alpha, beta)

    @given(alpha=positive, beta=st.floats(0.1, 5.0), scale=st.floats(0.01, 1e4))
    def test_hazard_relation(self, alpha, beta, scale):
        c = ParetoClass(alpha, beta)
        x = alpha * scale
        assert c.density(x) == pytest.approx(c.hazard(x) * c.survivor(x), rel=1e-12, abs=0)

    @given(alpha=positive, beta=st.floats(0.1, 5.0))
    @settings(max_examples=25)
    def test_quantile_round_trip(self, alpha, beta):
        c = ParetoClass(alpha, beta)
        u = np.arange(1000) / 1000
        assert np.max(np.abs(c.cdf(c.quantile(u)) - u)) <= 1e-12

    def test_vectorized_matches_scalar(self):
        c = ParetoClass(3.0, 0.7)
        xs = np.array([0.0, 1.0, 3.0, 4.5, 100.0])
        assert list(c.density(xs)) == [c.density(float(x)) for x in xs]
        assert list(c.log_survivor(xs)) == [c.log_survivor(float(x)) for x in xs]


class TestGeomMeanLaw:
    def test_derived_fields(self, law_a):
        assert law_a.alpha_geo == pytest.approx(math.sqrt(4000.0), rel=1e-12)
        assert law_a.beta_bar == 1.5
        assert law_a.breakpoint_u == pytest.approx(math.sqrt(0.5), rel=1e-15)

    def test_canonical_order(self):
        law = GeomMeanLaw(ParetoClass(20, 2), ParetoClass(10, 1))
        assert law.c1 == ParetoClass(10, 1)
        assert law.swapped

    def test_evaluation_examples(self, law_a):
        assert g12_eval(law_a, 25, "survivor") == pytest.approx(G12_25, rel=1e-13)
        assert g12_eval(law_a, 15, "q12_density") == pytest.approx(Q12_15, rel=1e-13)
        assert g12_eval(law_a, 25, "q12_density") == pytest.approx(Q12_25, rel=1e-13)
        assert g12_eval(law_a, 25, "p12_density") == pytest.approx(P12_25, rel=1e-13)
        assert g12_eval(law_a, 15, "p12_density") == 0.0
        assert g12_eval(law_a, 5, "survivor") == 1.0

    def test_survivor_is_sqrt_of_class_survivors(self, law_a):
        x = np.geomspace(1, 1e6, 500)
        direct = np.sqrt(law_a.c1.survivor(x) * law_a.c2.survivor(x))
        assert np.allclose(law_a.survivor(x), direct, rtol=1e-13, atol=0)

    def test_quantile_examples(self, law_a):
        assert g12_quantile(law_a, 1.0) == 10.0
        assert g12_quantile(law_a, law_a.breakpoint_u) == 20.0
        assert g12_quantile(law_a, 0.5) == pytest.approx(G12_INV_HALF, rel=1e-13)

    @pytest.mark.parametrize("u", [0.0, -0.5, 1.0000001])
    def test_quantile_domain(self, law_a, u):
        with pytest.raises(DomainError):
            g12_quantile(law_a, u)

    def test_continuity_at_breakpoints(self, law_a):
        assert law_a.survivor(law_a.c1.alpha) == 1.0
        assert law_a.survivor(law_a.c2.alpha) == law_a.breakpoint_u
        below = law_a.survivor(np.nextafter(20.0, 0))
        assert abs(below - law_a.breakpoint_u) < 1e-14

    def test_non_increasing(self, law_a):
        x = np.linspace(0, 200, 20001)
        assert np.all(np.diff(law_a.survivor(x)) <= 0)

    @given(a1=positive, ratio=st.floats(1.0, 20.0), b1=st.floats(0.2, 4.0),
           b2=st.floats(0.2, 4.0))
    @settings(max_examples=40)
    def test_lemma_b(self, a1, ratio, b1, b2):
        law = GeomMeanLaw(ParetoClass(a1, b1), ParetoClass(a1 * ratio, b2))
        x = np.geomspace(law.c1.alpha / 2, 1e6 * law.c2.alpha, 2001)
        assert np.all(law.p12_density(x) <= law.q12_density(x) * (1 + 1e-15))

    @given(a1=positive, ratio=st.floats(1.0, 20.0), b1=st.floats(0.2, 4.0),
           b2=st.floats(0.2, 4.0))
    @settings(max_examples=25)
    def test_quantile_round_trip(self, a1, ratio, b1, b2):
        law = GeomMeanLaw(ParetoClass(a1, b1), ParetoClass(a1 * ratio, b2))
        u = 1.0 - np.arange(1000) / 1000
        assert np.max(np.abs(law.survivor(law.survivor_quantile(u)) - u)) <= 1e-12

    def test_sample_iet_uses_survivor_inversion(self, law_a):
        u = np.array([0.0, 0.25, 0.9])
        assert np.array_equal(law_a.sample_iet(u), law_a.survivor_quantile(1.0 - u))


class TestCoefficient:
    def test_identical_classes(self):
        law = GeomMeanLaw(ParetoClass(10, 1), ParetoClass(10, 1))
        assert bhatt_coefficient(law) == 1.0

    def test_two_thirds(self, law_a):
        assert bhatt_coefficient(law_a) == pytest.approx(2 / 3, rel=1e-15)

    def test_gamma_two(self):
        law = GeomMeanLaw(ParetoClass(10, 1), ParetoClass(10 * 2 ** 0.2, 0.5))
        assert bhatt_coefficient(law) == pytest.approx(C12_GAMMA2, rel=1e-13)

    @pytest.mark.parametrize("c2", [ParetoClass(20, 2), ParetoClass(10 * 2 ** 0.2, 0.5),
                                    ParetoClass(10, 1), ParetoClass(37, 0.3)])
    def test_normalization_by_quadrature(self, c2):
        law = GeomMeanLaw(ParetoClass(10, 1), c2)
        assert integrate_with_tail(law, "q12_density") == pytest.approx(1.0, abs=1e-6)
        assert integrate_with_tail(law, "p12_density") == pytest.approx(
            bhatt_coefficient(law), abs=1e-6)
