import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from conftest import random_lambda, random_trig
from quartic import potential
from quartic.asymptotics import (OMEGA, asymptotic_constants, check_eigenvalue_asymptotics,
                                 check_resonance_asymptotics)
from quartic.errors import DomainError, UnsupportedRepresentationError

PI = math.pi


class TestConstants:
    def test_free(self, free):
        c = asymptotic_constants(free, 300 + 20j)
        for table in (c.b, c.c, c.alpha, c.beta):
            assert np.all(table == 0)

    def test_omega_in_lower_half_plane(self, cosine):
        c = asymptotic_constants(cosine, 300 - 20j)
        assert_allclose(c.omega, OMEGA.conj())

    @pytest.mark.parametrize('n', range(1, 7))
    def test_alpha_identity(self, two_cosines, n):
        vn2 = abs(two_cosines.fourier_coefficient(n)) ** 2
        scale = 1 / (2 * PI * n) ** 6
        value = asymptotic_constants(two_cosines, -4 * (PI * n) ** 4).alpha_combination()
        assert_allclose(value, vn2 * scale, rtol=1e-6, atol=1e-6 * scale)

    @pytest.mark.parametrize('n', range(1, 7))
    def test_beta_identity(self, two_cosines, n):
        vn2 = abs(two_cosines.fourier_coefficient(n)) ** 2
        scale = 1 / (16 * (PI * n) ** 6)
        value = asymptotic_constants(two_cosines, (PI * n) ** 4).beta_combination()
        assert_allclose(value, (-1) ** n * vn2 * scale, rtol=1e-6, atol=1e-6 * scale)

    def test_cosine_value(self, cosine):
        value = asymptotic_constants(cosine, -4 * PI ** 4).alpha_combination()
        assert_allclose(value, 1 / (2 * PI) ** 6, rtol=1e-6)

    def test_beta_from_alpha(self, cosine):
        c = asymptotic_constants(cosine, 50 + 10j)
        for j in range(4):
            for k in range(4):
                assert c.beta[j, k] == c.alpha[j] + c.alpha[k] - c.c[k, j]

    def test_conjugation(self, two_cosines):
        lam = 120 + 45j
        upper = asymptotic_constants(two_cosines, lam)
        lower = asymptotic_constants(two_cosines, lam.conjugate())
        assert_allclose(lower.alpha, upper.alpha.conj())
        assert_allclose(lower.b, upper.b.conj())

    def test_bounds(self, rng):
        for _ in range(10):
            v = random_trig(rng)
            lam = random_lambda(rng, 20.0)
            if abs(lam) < 1:
                continue
            assert asymptotic_constants(v, lam).within_bounds()

    def test_errors(self, cosine):
        with pytest.raises(DomainError):
            asymptotic_constants(cosine, 0.0)
        with pytest.raises(UnsupportedRepresentationError):
            asymptotic_constants(potential.delta_comb(1.0), 10.0)


class TestEigenvalueLaw:
    def test_free(self, free):
        table = check_eigenvalue_asymptotics(free, range(1, 5))
        for row in table.rows:
            assert row.residual <= 1e-8 * (PI * row.n) ** 4
        assert table.kind == 'eigenvalues'

    def test_inverse_harmonics_keep_their_gaps(self, inverse_n):
        table = check_eigenvalue_asymptotics(inverse_n, range(1, 7), source='matrix')
        for row in table.rows:
            assert abs(row.gap - 2 / row.n) <= 0.1 * 2 / row.n

    def test_residual_decay(self, two_cosines):
        table = check_eigenvalue_asymptotics(two_cosines, range(3, 8), source='matrix')
        assert table.decay_slope() < -1.4

    @pytest.mark.slow
    def test_determinant_matches_matrix(self, inverse_n):
        det = check_eigenvalue_asymptotics(inverse_n, range(1, 5))
        mat = check_eigenvalue_asymptotics(inverse_n, range(1, 5), source='matrix')
        for a, b in zip(det.rows, mat.rows):
            assert_allclose([a.lambda_minus, a.lambda_plus], [b.lambda_minus, b.lambda_plus], rtol=1e-7)

    @pytest.mark.slow
    @pytest.mark.parametrize('source', ['matrix', 'determinant'])
    def test_inverse_harmonics_far_out(self, inverse_n, source):
        table = check_eigenvalue_asymptotics(inverse_n, range(4, 13), source=source)
        assert table.max_normalized_residual <= 10
        for row in table.rows:
            assert abs(row.gap - 2 / row.n) * row.n ** 1.5 <= 20

    @pytest.mark.parametrize('n_range', [[0, 1], [200]])
    def test_range(self, cosine, n_range):
        with pytest.raises(DomainError):
            check_eigenvalue_asymptotics(cosine, n_range)


class TestResonanceLaw:
    def test_free(self, free):
        table = check_resonance_asymptotics(free, range(1, 4))
        for row in table.rows:
            assert row.residual <= 1e-8 * 4 * (PI * row.n) ** 4

    @pytest.mark.slow
    def test_inverse_harmonics(self, inverse_n):
        table = check_resonance_asymptotics(inverse_n, range(1, 4))
        for row in table.rows:
            assert abs(row.gap - 2 * math.sqrt(2) / row.n) <= 0.15 * 2 * math.sqrt(2) / row.n

    @pytest.mark.slow
    def test_inverse_harmonics_far_out(self, inverse_n):
        table = check_resonance_asymptotics(inverse_n, range(4, 13))
        assert table.max_normalized_residual <= 10
        for row in table.rows:
            assert abs(row.gap - 2 * math.sqrt(2) / row.n) * row.n ** 1.5 <= 20
