import itertools
import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from quartic import hill, potential, spectrum
from quartic.errors import CountMismatchError, RootEscapeError
from quartic.roots import Circle, count_zeros

PI = math.pi


def expanded(values, multiplicities):
    return [v for v, m in zip(values, multiplicities) for _ in range(m)]


class TestHelpers:
    @pytest.mark.parametrize('lam', [0.0, 16.0, -4.0, 1e6, -3.5])
    def test_parametrisation(self, lam):
        assert_allclose(spectrum.lam_of(spectrum.s_of(lam)), lam, rtol=1e-14)

    def test_region_index(self, free, cosine):
        assert spectrum.region_index(free) == 1
        # ||2 cos 2 pi t|| = 4/pi > 1
        assert spectrum.region_index(cosine) == 2
        assert spectrum.region_index(potential.delta_comb(27.5)) == 4

    def test_backend_choice(self, free, cosine):
        assert spectrum.spectral_backend(free) == 'closed'
        assert spectrum.spectral_backend(cosine) == 'hill'
        assert spectrum.spectral_backend(potential.delta_comb(1.0)) == 'delta_comb'
        with pytest.raises(ValueError):
            spectrum.evaluator(cosine, 'T3')


class TestFreeCounts:
    def test_rho(self, free):
        f = spectrum.evaluator(free, 'rho')
        assert count_zeros(f, Circle(0, 4 * (1.5 * PI) ** 4)) == 3

    def test_periodic(self, free):
        f = spectrum.evaluator(free, 'Dplus')
        assert count_zeros(f, Circle(0, (3 * PI) ** 4)) == 3

    def test_empty_disk(self, free):
        f = spectrum.evaluator(free, 'Dminus')
        assert count_zeros(f, Circle(2 * PI, PI / 2, plane='z')) == 0


class TestFreeSpectrum:
    def test_periodic(self, free):
        lams, mults, regions = spectrum.periodic_eigenvalues(free, n_max=10)
        assert_allclose(lams, [0.0] + [(2 * PI * k) ** 4 for k in range(1, 6)], rtol=1e-8, atol=1e-8)
        assert mults == (1, 2, 2, 2, 2, 2)
        assert all(r.expected == r.counted == r.found for r in regions)

    def test_antiperiodic(self, free):
        lams, mults, _ = spectrum.antiperiodic_eigenvalues(free, n_max=10)
        assert_allclose(lams, [(PI * k) ** 4 for k in range(1, 10, 2)], rtol=1e-8)
        assert mults == (2,) * 5

    def test_labels(self, free):
        labelled = spectrum.eigenvalues(free, n_max=4).labelled()
        for n in range(1, 5):
            assert_allclose(labelled[(n, '-')], (PI * n) ** 4, rtol=1e-8)
            assert_allclose(labelled[(n, '+')], (PI * n) ** 4, rtol=1e-8)
        assert_allclose(labelled[(0, '+')], 0.0, atol=1e-8)

    def test_resonances(self, free):
        found = spectrum.resonances(free, n_max=6)
        assert_allclose(found.real, [-4 * (PI * n) ** 4 for n in range(6, 0, -1)] + [0.0],
                        rtol=1e-8, atol=1e-8)
        assert found.real_multiplicity == (2,) * 6 + (1,)
        assert found.complex == ()
        assert_allclose(found.r0_minus, 0.0, atol=1e-8)
        assert sorted(found.pairs) == list(range(1, 7))
        assert len(found.all()) == 13


class TestCosine:
    def test_first_antiperiodic_pair(self, cosine):
        labelled = spectrum.eigenvalues(cosine, n_max=3).labelled()
        assert abs(labelled[(1, '-')] - (PI ** 4 - 1)) < 0.05
        assert abs(labelled[(1, '+')] - (PI ** 4 + 1)) < 0.05

    def test_determinant_matches_matrix(self, two_cosines):
        lams, mults, regions = spectrum.periodic_eigenvalues(two_cosines, n_max=2)
        zeros = expanded(lams, mults)
        matrix = hill.periodic_hill_eigenvalues(two_cosines, 3)
        assert_allclose(zeros[:3], matrix, rtol=1e-8, atol=1e-6)
        lams, mults, _ = spectrum.antiperiodic_eigenvalues(two_cosines, n_max=1)
        assert_allclose(expanded(lams, mults)[:2], hill.antiperiodic_hill_eigenvalues(two_cosines, 2),
                        rtol=1e-8)

    def test_ordering(self, two_cosines):
        eig = spectrum.eigenvalues(two_cosines, n_max=6)
        labelled = eig.labelled()
        for n in range(1, 6):
            assert labelled[(n, '-')] <= labelled[(n, '+')] < labelled[(n + 1, '-')]

    def test_residuals(self, two_cosines):
        f = spectrum.evaluator(two_cosines, 'Dplus')
        lams, _, _ = spectrum.periodic_eigenvalues(two_cosines, n_max=4)
        for lam in lams:
            scale = math.exp(2 * abs(spectrum.s_of(lam))) if lam > 0 else 1.0
            assert abs(f(lam)) <= 1e-6 * scale

    def test_first_resonance_pair_is_real(self, cosine):
        found = spectrum.resonances(cosine, n_max=2)
        lo, hi = found.pairs[1]
        assert abs(complex(lo).imag) == 0 and abs(complex(hi).imag) == 0
        assert abs(abs(hi - lo) - 2 * math.sqrt(2)) < 0.25 * 2 * math.sqrt(2)

    def test_recovered_resonances(self, inverse_n):
        direct = spectrum.resonances(inverse_n, n_max=3)
        recovered = spectrum.resonances(inverse_n, n_max=3, recover=True)
        assert len(direct.real) == len(recovered.real)
        assert_allclose(recovered.real, direct.real, rtol=1e-6, atol=1e-6)

    @pytest.mark.slow
    def test_recovery_through_double_resonance(self, cosine):
        direct = spectrum.resonances(cosine, n_max=5)
        recovered = spectrum.resonances(cosine, n_max=5, recover=True)
        expected, found = direct.all(), recovered.all()
        assert len(found) == len(expected)
        for r in expected:
            assert min(abs(f - r) for f in found) <= 1e-5 * max(1.0, abs(r))
        assert sorted(recovered.pairs) == sorted(direct.pairs)

    def test_residuals(self, inverse_n):
        tol = 1e-10
        for which, search in (('Dplus', spectrum.periodic_eigenvalues),
                              ('Dminus', spectrum.antiperiodic_eigenvalues)):
            f = spectrum.evaluator(inverse_n, which)
            lams, mults, _ = search(inverse_n, 4, tol)
            for lam, m in zip(lams, mults):
                if m == 1:
                    assert abs(f(lam)) <= tol * spectrum.residual_scale(lam, which)

    def test_loose_tolerance(self, cosine):
        strict = expanded(*spectrum.periodic_eigenvalues(cosine, 2)[:2])
        loose = expanded(*spectrum.periodic_eigenvalues(cosine, 2, tol=1e-6)[:2])
        assert_allclose(loose, strict, rtol=1e-4, atol=1e-8)
        f = spectrum.evaluator(cosine, 'Dplus')
        for lam in loose:
            assert abs(f(lam)) <= 1e-6 * spectrum.residual_scale(lam, 'Dplus')

    def test_small_coupling(self, cosine):
        lams, _, _ = spectrum.periodic_eigenvalues(cosine.scaled(0.05), n_max=2)
        assert abs(lams[0]) < 1e-3

    def test_missed_root(self, cosine, monkeypatch):
        monkeypatch.setattr(spectrum, 'real_zeros', lambda *args, **kwargs: [])
        with pytest.raises(CountMismatchError):
            spectrum.periodic_eigenvalues(cosine, n_max=2)


class TestClassification:
    def test_free(self, free):
        assert spectrum.classify_point(free, 5.0) == 2
        assert spectrum.classify_point(free, -1.0) == 0

    def test_four_fold_below_lowest_band(self, cosine):
        v = cosine.scaled(0.5)
        found = spectrum.resonances(v, n_max=1)
        lam0 = spectrum.periodic_eigenvalues(v, n_max=1)[0][0]
        assert found.r0_minus < lam0
        assert spectrum.classify_point(v, 0.5 * (found.r0_minus + lam0)) == 4


class TestBandScan:
    def test_free(self, free):
        bands = spectrum.band_scan(free, -10.0, 500.0)
        assert len(bands.bands) == 1
        band = bands.bands[0]
        assert band.multiplicity == 2
        assert_allclose([band.lo, band.hi], [0.0, 500.0], atol=1e-8)
        gap, = bands.gaps
        assert gap.kind == 'resonance'
        assert gap.hi_label == 'periodic'
        assert_allclose(bands.closed_gaps, [PI ** 4], rtol=1e-8)

    def test_free_band_is_monotone(self, free):
        band, = spectrum.band_scan(free, -10.0, 90.0).bands
        assert band.monotone

    def test_monotone_across_closed_gap(self, free):
        bands = spectrum.band_scan(free, -10.0, 200.0)
        band, = bands.bands
        assert_allclose(bands.closed_gaps, [PI ** 4], rtol=1e-8)
        assert band.monotone

    def test_unresolved_transition(self, cosine, monkeypatch):
        classes = itertools.cycle([0, 2, 4])
        monkeypatch.setattr(spectrum, 'classify_point', lambda potential, lam, backend='auto': next(classes))
        monkeypatch.setattr(spectrum.settings, 'REFINE_MAX_DEPTH', 3)
        with pytest.raises(RootEscapeError):
            spectrum.band_scan(cosine, 0.0, 1.0)

    def test_partition(self, two_cosines):
        bands = spectrum.band_scan(two_cosines, -200.0, 2000.0)
        pieces = sorted([(b.lo, b.hi) for b in bands.bands] + [(g.lo, g.hi) for g in bands.gaps])
        assert pieces[0][0] == -200.0 and pieces[-1][1] == 2000.0
        for (_, hi), (lo, _) in zip(pieces[:-1], pieces[1:]):
            assert hi == lo
        assert any(g.kind == 'stable' for g in bands.gaps)
        assert np.all([b.multiplicity in (2, 4) for b in bands.bands])
