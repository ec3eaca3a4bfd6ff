import math

import numpy as np
import pytest
from numpy.testing import assert_allclose

from quartic.errors import ZeroOnContourError
from quartic.roots import Circle, RealRoot, count_zeros, disk_roots, merge_roots, real_zeros


class TestCountZeros:
    def test_polynomial(self):
        f = lambda lam: (lam - 1) * (lam - 2j) * (lam + 5)
        assert count_zeros(f, Circle(0, 3)) == 2
        assert count_zeros(f, Circle(0, 6)) == 3
        assert count_zeros(f, Circle(10, 1)) == 0

    def test_double_zero(self):
        assert count_zeros(lambda lam: (lam - 0.5) ** 2, Circle(0, 1)) == 2

    def test_entire_function(self):
        # sin(pi sqrt(lam)) / sqrt(lam) vanishes at lam = k^2
        f = lambda lam: np.sinc(np.sqrt(complex(lam)))
        assert count_zeros(f, Circle(0, 12)) == 3

    def test_z_plane(self):
        circle = Circle(0, 2, plane='z')
        assert_allclose(circle.lam(0.0), 16.0)
        # lam = z^4 winds four times, one zero of lam - 1 per quarter turn
        assert count_zeros(lambda lam: lam - 1, circle) == 4

    def test_zero_on_contour(self):
        with pytest.raises(ZeroOnContourError):
            count_zeros(lambda lam: lam - 2, Circle(0, 2), samples=4)


class TestRealZeros:
    def test_simple(self):
        roots = real_zeros(math.sin, 0.5, 10.0, per_unit=8)
        assert [r.multiplicity for r in roots] == [1, 1, 1]
        assert_allclose([r.s for r in roots], [math.pi, 2 * math.pi, 3 * math.pi], rtol=1e-13)

    def test_touching_double_root(self):
        roots = real_zeros(lambda s: (s - 1.33) ** 2, 0.0, 3.0, per_unit=10)
        assert len(roots) == 1
        assert roots[0].multiplicity == 2
        assert_allclose(roots[0].s, 1.33, atol=1e-6)

    def test_close_pair_inside_one_cell(self):
        f = lambda s: (s - 1.1) * (s - 1.12)
        roots = real_zeros(f, 0.0, 2.0, per_unit=4)
        assert_allclose([r.s for r in roots], [1.1, 1.12], atol=1e-12)

    def test_no_roots(self):
        assert real_zeros(lambda s: 1 + s * s, -3.0, 3.0) == []


class TestMerge:
    def test_adds_multiplicities(self):
        merged = merge_roots([RealRoot(1.0), RealRoot(1.0 + 1e-9), RealRoot(2.0)], 1e-6)
        assert [r.multiplicity for r in merged] == [2, 1]


class TestDiskRoots:
    def test_quadratic(self):
        roots, peak = disk_roots(lambda z: (z - 0.1) * (z + 0.2j), 0.0, 0.5)
        assert_allclose(sorted(roots, key=lambda z: z.real), [-0.2j, 0.1], atol=1e-12)
        assert peak > 0

    def test_excludes_outside(self):
        roots, _ = disk_roots(lambda z: (z - 3.0) * (z - 0.25), 0.0, 1.0)
        assert_allclose(roots, [0.25], atol=1e-12)

    def test_shifted_centre(self):
        roots, _ = disk_roots(lambda z: np.exp(z) * (z - 10.05), 10.0, 0.2)
        assert_allclose(roots, [10.05], atol=1e-10)
