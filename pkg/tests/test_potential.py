import numpy as np
import pytest
from numpy.testing import assert_allclose
from scipy import integrate

from quartic import potential
from quartic.errors import InvalidPotentialError, UnsupportedRepresentationError


def sampled_cosine(points=256, order=None):
    t = np.arange(points) / points
    return potential.sampled(2 * np.cos(2 * np.pi * t), order)


class TestConstruction:
    def test_nonzero_mean_rejected(self):
        with pytest.raises(InvalidPotentialError):
            potential.sampled(np.full(16, 0.5))

    def test_nonzero_v0_rejected(self):
        with pytest.raises(InvalidPotentialError):
            potential.trig({0: 1.0, 1: 1.0})

    def test_conjugate_mismatch_rejected(self):
        with pytest.raises(InvalidPotentialError):
            potential.trig({1: 1 + 1j, -1: 1 + 1j})

    def test_from_spec(self):
        v = potential.from_spec({'kind': 'trig', 'coeffs': [[2, 0.5, -0.25]]})
        assert v.fourier_coefficient(2) == 0.5 - 0.25j
        assert v.fourier_coefficient(-2) == 0.5 + 0.25j
        assert potential.from_spec(v.to_spec()).fourier_coefficient(2) == v.fourier_coefficient(2)

    def test_unknown_kind(self):
        with pytest.raises(InvalidPotentialError):
            potential.from_spec({'kind': 'square'})

    def test_delta_comb_has_no_pointwise_values(self):
        with pytest.raises(UnsupportedRepresentationError):
            potential.delta_comb(1.0).evaluate(0.5)


class TestFourier:
    def test_zero(self, free):
        assert free.fourier_coefficient(1) == 0

    def test_cosine(self, cosine):
        assert cosine.fourier_coefficient(1) == pytest.approx(1.0)
        assert cosine.fourier_coefficient(3) == 0

    def test_sampled_matches_trig(self):
        assert_allclose(sampled_cosine().fourier_coefficient(1), 1.0, atol=1e-10)

    def test_spline_coefficient(self):
        assert_allclose(sampled_cosine(order=3).fourier_coefficient(1), 1.0, atol=1e-7)


class TestEvaluate:
    def test_cosine_at_zero(self, cosine):
        assert_allclose(cosine.evaluate(0.0), 2.0)

    def test_periodic(self, two_cosines):
        assert_allclose(two_cosines.evaluate(0.3), two_cosines.evaluate(1.3), atol=1e-13)

    @pytest.mark.parametrize('order, tol', [(None, 1e-12), (3, 1e-7)])
    def test_sampled_between_nodes(self, cosine, order, tol):
        t = np.linspace(0.001, 0.999, 37)
        assert_allclose(sampled_cosine(order=order).evaluate(t), cosine.evaluate(t), atol=tol)

    def test_linear_interpolation_hits_nodes(self):
        v = sampled_cosine(points=32, order=1)
        assert_allclose(v.evaluate(np.arange(32) / 32), v.values, atol=1e-14)


class TestNorms:
    def test_zero(self, free):
        assert free.norm_l1() == 0

    def test_cosine(self, cosine):
        assert_allclose(cosine.norm_l1(), 4 / np.pi, rtol=1e-10)

    def test_delta_comb_strength(self):
        assert potential.delta_comb(-3.0).strength() == 3.0


class TestAutocorrelation:
    @pytest.mark.parametrize('m', [1, 2])
    def test_trig_closed_form_matches_quadrature(self, two_cosines, m):
        for w in (0.0, 0.37, 0.9 * m):
            expected, _ = integrate.quad(
                lambda t: two_cosines.evaluate(t) * two_cosines.evaluate(t - w), w, m,
                epsabs=1e-13, limit=200)
            assert_allclose(two_cosines.autocorrelation(w, m)[0], expected, atol=1e-11)

    def test_spline_representation(self, cosine):
        w = np.array([0.1, 0.5])
        assert_allclose(sampled_cosine(order=3).autocorrelation(w), cosine.autocorrelation(w), atol=1e-7)
