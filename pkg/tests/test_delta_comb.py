import math

import pytest
from numpy.testing import assert_allclose

import quartic.delta_comb as delta_comb
from quartic import potential, spectrum
from quartic.errors import BracketError, DomainError
from quartic.traces import trace_bundle

TWO_PI = 2 * math.pi


@pytest.fixture(scope='module')
def critical2():
    return delta_comb.critical_gamma(2)


class TestClosedForms:
    @pytest.mark.parametrize('lam', [0.3, -0.5 + 0.2j, 40.0, 1600.0, -900.0, 300 + 700j])
    def test_matches_monodromy(self, lam):
        gamma = 37.0
        t1, rho = delta_comb.traces_delta(gamma, lam)
        bundle = trace_bundle(potential.delta_comb(gamma), lam)
        scale = bundle.scale
        assert abs(t1 - bundle.T1) <= 1e-12 * scale
        assert abs(rho - bundle.rho) <= 1e-10 * scale ** 2

    def test_free_limit(self):
        t1, rho = delta_comb.traces_delta(0.0, 81.0)
        assert_allclose(t1, (math.cosh(3.0) + math.cos(3.0)) / 2, rtol=1e-14)
        assert_allclose(rho, ((math.cosh(3.0) - math.cos(3.0)) / 2) ** 2, rtol=1e-14)

    @pytest.mark.parametrize('z', [TWO_PI + 0.3, TWO_PI + 2.5, 2 * TWO_PI + 1.0])
    def test_factorisation(self, z):
        gamma = 700.0
        _, rho = delta_comb.traces_delta(gamma, z ** 4)
        assert_allclose(delta_comb.rho_factored(gamma, z), rho.real, rtol=1e-8)

    @pytest.mark.parametrize('z', [1.0, TWO_PI + 3.5, 2 * TWO_PI - 0.1])
    def test_outside_intervals(self, z):
        with pytest.raises(DomainError):
            delta_comb.F_pm(z)

    def test_branches_are_ordered(self):
        f_plus, f_minus = delta_comb.F_pm(TWO_PI + 1.0)
        assert 0 < f_plus < f_minus


class TestCriticalCoupling:
    @pytest.mark.parametrize('n', [2, 3, 4])
    def test_cubic_growth(self, n):
        c = delta_comb.critical_gamma(n)
        assert 0.99 <= c.gamma_n / (4 * c.z_n ** 3) <= 1.01

    @pytest.mark.parametrize('n', [2, 3])
    def test_curvature(self, n):
        c = delta_comb.critical_gamma(n)
        assert 0.9 <= c.Fpp / (27 * math.exp(c.z_n)) <= 1.1

    def test_is_a_minimum(self, critical2):
        eps = critical2.eps_n
        assert 0 < eps < 1e-3
        for other in (eps / 2, 2 * eps):
            assert delta_comb.f_plus_eps(2, other) > critical2.gamma_n
        assert abs(critical2.slope) <= 1e-6 * critical2.Fpp * eps

    def test_rejects_n_zero(self):
        with pytest.raises(DomainError):
            delta_comb.critical_gamma(0)


class TestResonancePairs:
    def test_real_split(self, critical2):
        nu = 1e-3 * critical2.nu_max
        pair = delta_comb.resonance_pair(2, critical2.gamma_n + nu, critical=critical2)
        assert pair.real
        assert pair.r_minus.real < critical2.z_n ** 4 < pair.r_plus.real
        split = abs(pair.r_plus - pair.r_minus)
        assert_allclose(split, pair.predicted_split(critical2), rtol=0.1)

    def test_complex_split(self, critical2):
        nu = -1e-3 * critical2.nu_max
        pair = delta_comb.resonance_pair(2, critical2.gamma_n + nu, critical=critical2)
        assert not pair.real
        assert pair.r_plus.imag > 0
        assert pair.r_minus == pair.r_plus.conjugate()
        assert_allclose(abs(pair.r_plus - pair.r_minus), pair.predicted_split(critical2), rtol=0.1)

    def test_collision(self, critical2):
        pair = delta_comb.resonance_pair(2, critical2.gamma_n, critical=critical2)
        assert pair.r_plus == pair.r_minus == critical2.z_n ** 4
        assert pair.observed_only

    def test_continuity(self, critical2):
        lam = critical2.z_n ** 4
        for sign in (1, -1):
            nu = sign * 1e-8 * critical2.nu_max
            pair = delta_comb.resonance_pair(2, critical2.gamma_n + nu, critical=critical2)
            assert abs(pair.r_plus - lam) <= 1e-6 * lam
            assert abs(pair.r_minus - lam) <= 1e-6 * lam

    def test_outside_bracket(self, critical2):
        with pytest.raises(BracketError):
            delta_comb.resonance_pair(2, critical2.gamma_n + 2 * critical2.nu_max, critical=critical2)

    def test_sweep(self, critical2):
        gammas = delta_comb.sweep_gammas(critical2, steps=5)
        assert len(gammas) == 5
        assert_allclose(gammas[2], critical2.gamma_n)
        assert_allclose(gammas[-1] - gammas[0], 1.8 * critical2.nu_max)
        pairs = [delta_comb.resonance_pair(2, g, critical=critical2) for g in gammas]
        assert [p.real for p in pairs] == [False, False, True, True, True]


class TestResonanceGap:
    def test_gap_opens_above_critical_coupling(self):
        c = delta_comb.critical_gamma(1)
        pair = delta_comb.resonance_pair(1, c.gamma_n + 0.5 * c.nu_max, critical=c)
        comb = potential.delta_comb(pair.gamma)
        lo, hi = pair.r_minus.real, pair.r_plus.real
        bands = spectrum.band_scan(comb, lo - 5.0, hi + 5.0, grid_n=400)
        gaps = [g for g in bands.gaps if g.kind == 'resonance']
        assert len(gaps) == 1
        assert_allclose([gaps[0].lo, gaps[0].hi], [lo, hi], rtol=1e-8)
        assert trace_bundle(comb, 0.5 * (lo + hi)).rho.real < 0
