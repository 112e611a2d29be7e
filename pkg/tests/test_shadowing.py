import math

import numpy as np
import pytest
from scipy.integrate import quad

from igcomposite import montecarlo as mc
from igcomposite import shadowing as sh
from igcomposite.fitting import cvm_statistic

ALL_MODELS = [
    sh.Lognormal(mu=0.3, sigma=1.1),
    sh.GammaShadowing(k=2.4, omega=1.3),
    sh.InverseGaussian(mu_i=1.2, lam=3.0),
    sh.InverseGamma(m=3.5, omega_i=0.8),
]


class TestValidation:
    def test_inverse_gamma_requires_mean(self):
        with pytest.raises(ValueError):
            sh.InverseGamma(m=1.0, omega_i=1.0)
        with pytest.raises(ValueError):
            sh.InverseGamma(m=0.5, omega_i=1.0)

    def test_positive_fields(self):
        with pytest.raises(ValueError):
            sh.Lognormal(mu=0.0, sigma=0.0)
        with pytest.raises(ValueError):
            sh.GammaShadowing(k=-1.0, omega=1.0)
        with pytest.raises(ValueError):
            sh.InverseGaussian(mu_i=1.0, lam=0.0)


class TestCdf:
    def test_examples(self):
        assert sh.cdf(sh.Lognormal(0.7, 0.4), math.exp(0.7)) == pytest.approx(0.5, abs=1e-14)
        assert sh.cdf(sh.GammaShadowing(1.0, 2.0), 2.0) == pytest.approx(
            1 - math.exp(-1), rel=1e-12
        )
        assert sh.cdf(sh.InverseGamma(2.0, 1.0), 1.0) == pytest.approx(
            2 * math.exp(-1), rel=1e-12
        )

    @pytest.mark.parametrize("model", ALL_MODELS)
    def test_domain(self, model):
        with pytest.raises(ValueError):
            sh.cdf(model, 0.0)
        with pytest.raises(ValueError):
            sh.cdf(model, -1.0)

    @pytest.mark.parametrize("model", ALL_MODELS)
    def test_limits(self, model):
        assert sh.cdf(model, 1e-12) <= 1e-10
        assert sh.cdf(model, 1e12) >= 1 - 1e-10

    @pytest.mark.parametrize("model", ALL_MODELS)
    def test_monotone(self, model):
        ys = np.logspace(-3, 3, 200)
        vals = sh.cdf(model, ys)
        assert np.all(np.diff(vals) >= -1e-15)

    @pytest.mark.parametrize("model", ALL_MODELS)
    def test_cdf_matches_pdf_quadrature(self, model):
        for y in (0.4, 1.0, 2.7):
            integral, _ = quad(lambda t: sh.pdf(model, t), 0, y, limit=200)
            assert sh.cdf(model, y) == pytest.approx(integral, abs=1e-8)


class TestPdf:
    def test_examples(self):
        assert sh.pdf(sh.GammaShadowing(1.0, 1.0), 0.5) == pytest.approx(
            math.exp(-0.5), rel=1e-12
        )
        assert sh.pdf(sh.InverseGamma(2.0, 1.0), 1.0) == pytest.approx(
            math.exp(-1), rel=1e-12
        )

    @pytest.mark.parametrize("model", ALL_MODELS)
    def test_normalization(self, model):
        integral, _ = quad(lambda t: sh.pdf(model, t), 0, np.inf, limit=400)
        assert integral == pytest.approx(1.0, abs=1e-9)


class TestLogDomainCdf:
    @pytest.mark.parametrize("model", ALL_MODELS)
    def test_identity(self, model):
        for t in (-2.0, 0.0, 1.5):
            assert sh.log_domain_cdf(model, t) == sh.cdf(model, math.exp(t))

    def test_examples(self):
        assert sh.log_domain_cdf(sh.Lognormal(0.0, 0.8), 0.0) == pytest.approx(0.5)
        assert sh.log_domain_cdf(sh.InverseGamma(2.0, 1.0), 0.0) == pytest.approx(
            2 * math.exp(-1), rel=1e-12
        )

    def test_extreme_arguments_saturate(self):
        model = sh.InverseGamma(3.0, 1.0)
        assert sh.log_domain_cdf(model, -1e4) == pytest.approx(0.0, abs=1e-12)
        assert sh.log_domain_cdf(model, 1e4) == pytest.approx(1.0, abs=1e-12)


class TestSampling:
    def test_mean(self):
        xs = sh.sample_inverse_gamma(5.0, 1.0, 10**6, seed=42)
        # Var[xi] = omega^2/(m-2) = 1/3
        stderr = math.sqrt(1.0 / 3.0 / 10**6)
        assert abs(xs.mean() - 1.0) < 3 * stderr

    def test_determinism(self):
        a = sh.sample_inverse_gamma(3.0, 2.0, 1000, seed=7)
        b = sh.sample_inverse_gamma(3.0, 2.0, 1000, seed=7)
        np.testing.assert_array_equal(a, b)

    def test_ecdf_against_cdf(self):
        m, om = 5.0, 1.0
        xs = sh.sample_inverse_gamma(m, om, 10**6, seed=3)
        ecdf = mc.empirical_cdf(xs).thin(5000)
        model = sh.InverseGamma(m, om)
        res = mc.compare(ecdf, lambda t: sh.cdf(model, t))
        assert res.sup_distance + 250 / 10**6 < 0.002

    def test_reciprocal_gamma_duality(self):
        # 1/xi is gamma with shape m and mean m/((m-1) omega_i)
        m, om = 4.0, 0.7
        xs = sh.sample_inverse_gamma(m, om, 10**5, seed=11)
        recip = 1.0 / xs
        gamma_model = sh.GammaShadowing(k=m, omega=m / ((m - 1.0) * om))
        ecdf = mc.empirical_cdf(recip)
        stat = cvm_statistic(ecdf, lambda t: sh.cdf(gamma_model, t), support_pad=0.0)
        wrong = sh.GammaShadowing(k=m + 2.0, omega=m / ((m - 1.0) * om))
        stat_wrong = cvm_statistic(ecdf, lambda t: sh.cdf(wrong, t), support_pad=0.0)
        assert stat < 5e-4
        assert stat < stat_wrong / 20

    def test_domain(self):
        with pytest.raises(ValueError):
            sh.sample_inverse_gamma(1.0, 1.0, 10, seed=0)
        with pytest.raises(ValueError):
            sh.sample_inverse_gamma(2.0, 1.0, 0, seed=0)
