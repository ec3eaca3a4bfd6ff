"""Zero location for entire functions of lambda.

* ``count_zeros``: argument-principle counts on circles, by adaptive
  phase accumulation;
* ``real_zeros``: sign-change and touching-zero scans of a real
  function on a grid, refined with Brent's method;
* ``disk_roots``: all zeros inside a small disk from the Taylor
  polynomial read off equispaced samples on its boundary.
"""

import cmath
import dataclasses
import logging
import math

import numpy as np
from numpy.polynomial import polynomial
from scipy import optimize

from quartic import settings
from quartic.errors import ZeroOnContourError

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True)
class Circle:
    """A circle in the lambda plane, or in the z = lambda^(1/4) plane."""
    center: complex
    radius: float
    plane: str = 'lambda'

    def point(self, phi):
        return self.center + self.radius * cmath.exp(1j * phi)

    def lam(self, phi):
        p = self.point(phi)
        return p ** 4 if self.plane == 'z' else p

    def __str__(self):
        return f"|{self.plane} - {self.center:.6g}| = {self.radius:.6g}"


def count_zeros(f, contour, samples=None):
    """Winding number of f(lam) along ``contour``.

    Segments are bisected until the phase advances by at most pi/3; a
    zero on (or numerically at) the contour raises ZeroOnContourError.
    """
    samples = samples or settings.CONTOUR_SAMPLES
    phis = np.linspace(0.0, 2 * math.pi, samples + 1)
    values = [complex(f(contour.lam(phi))) for phi in phis[:-1]]
    values.append(values[0])
    magnitudes = [abs(v) for v in values]
    total = 0.0

    def segment(a, b, fa, fb, depth):
        if fa == 0 or fb == 0:
            raise ZeroOnContourError(f"zero of f on {contour}", contour=str(contour))
        step = cmath.phase(fb / fa)
        if abs(step) <= math.pi / 3 or depth >= settings.CONTOUR_MAX_DEPTH:
            return step
        mid = 0.5 * (a + b)
        fm = complex(f(contour.lam(mid)))
        magnitudes.append(abs(fm))
        return segment(a, mid, fa, fm, depth + 1) + segment(mid, b, fm, fb, depth + 1)

    for i in range(samples):
        total += segment(phis[i], phis[i + 1], values[i], values[i + 1], 0)
    if min(magnitudes) <= settings.CONTOUR_MIN_RATIO * max(magnitudes):
        raise ZeroOnContourError(f"f nearly vanishes on {contour}", contour=str(contour))
    winding = total / (2 * math.pi)
    count = int(round(winding))
    logger.debug("winding on %s: %.6f -> %d", contour, winding, count)
    return count


"""-------------------------------------------------------------------------"""


@dataclasses.dataclass(frozen=True)
class RealRoot:
    s: float
    multiplicity: int = 1


def _brent(f, a, b, xtol=None):
    floor = 1e-15 * max(1.0, abs(a), abs(b))
    return optimize.brentq(f, a, b, xtol=max(xtol or floor, floor), maxiter=200)


def _refine(f, a, b, tol=None, scale=None):
    """Bracketed root of f to relative position ``tol`` and |f| <= tol * scale(s).

    The bracket keeps shrinking while the residual is above target; without
    ``tol`` it is closed to machine precision.
    """
    floor = 1e-15 * max(1.0, abs(a), abs(b))
    if tol is None:
        return _brent(f, a, b)
    xtol = tol * max(1.0, abs(a), abs(b))
    while True:
        s = _brent(f, a, b, xtol)
        residual, target = abs(float(f(s))), tol * (scale(s) if scale else 1.0)
        if residual <= target:
            return s
        if xtol <= floor:
            logger.debug("root at s=%.17g: residual %.3g above %.3g at machine precision",
                         s, residual, target)
            return s
        xtol = max(1e-3 * xtol, floor)


def real_zeros(f, s_lo, s_hi, per_unit=None, tol=None, scale=None):
    """Zeros of the real function f on [s_lo, s_hi], with multiplicities.

    Besides sign changes, a grid point where |f| has a local minimum is
    examined: the extremum of f nearby is located and either splits into
    two roots (sign flip), is a touching double root (|f| negligible
    against its neighbours, or against ``scale`` when one is given) or is
    discarded. Roots are refined to |f| <= tol * scale(s), see ``_refine``.
    """
    per_unit = per_unit or settings.GRID_PER_UNIT_Z
    cells = max(4, int(math.ceil((s_hi - s_lo) * per_unit)))
    grid = np.linspace(s_lo, s_hi, cells + 1)
    cell = grid[1] - grid[0]
    values = np.array([float(f(s)) for s in grid])
    roots = []
    for s, v in zip(grid, values):
        if v == 0.0:
            roots.append(RealRoot(float(s)))
    for i in range(cells):
        a, b = values[i], values[i + 1]
        if a * b < 0:
            roots.append(RealRoot(_refine(f, grid[i], grid[i + 1], tol, scale)))
    h = 1e-5 * cell

    def touch_scale(s, left, right):
        local = max(abs(left), abs(right))
        return max(local, scale(s)) if scale else local

    def slope(s):
        return (float(f(s + h)) - float(f(s - h))) / (2 * h)

    for i in range(1, cells):
        left, mid, right = values[i - 1], values[i], values[i + 1]
        if mid == 0 or left * mid <= 0 or mid * right <= 0:
            continue
        if not (abs(mid) < abs(left) and abs(mid) < abs(right)):
            continue
        lo, hi = grid[i - 1] + h, grid[i + 1] - h
        if slope(lo) * slope(hi) >= 0:
            continue
        s_ext = _brent(slope, lo, hi)
        f_ext = float(f(s_ext))
        if f_ext * mid < 0:
            roots.append(RealRoot(_refine(f, grid[i - 1], s_ext, tol, scale)))
            roots.append(RealRoot(_refine(f, s_ext, grid[i + 1], tol, scale)))
        elif abs(f_ext) <= settings.DOUBLE_ROOT_TOL * touch_scale(s_ext, left, right):
            roots.append(RealRoot(s_ext, 2))
    return merge_roots(roots, settings.MERGE_TOL * cell)


def merge_roots(roots, tol):
    """Merge roots closer than ``tol``, adding their multiplicities."""
    merged = []
    for root in sorted(roots, key=lambda r: r.s):
        if merged and abs(root.s - merged[-1].s) <= tol:
            last = merged.pop()
            merged.append(RealRoot(0.5 * (last.s + root.s), last.multiplicity + root.multiplicity))
        else:
            merged.append(root)
    return merged


"""-------------------------------------------------------------------------"""


def disk_roots(g, center, radius, samples=None, tol=None, scale=None):
    """Zeros of g(z) in |z - center| < radius, from its Taylor polynomial.

    g is sampled at ``samples`` equispaced boundary points; the FFT of the
    samples gives the Taylor coefficients of g(center + radius * w).
    Each zero is polished by Newton steps, until |g| <= tol * scale(z)
    when ``tol`` is given. Returns the zeros (in z) and the largest
    boundary modulus.
    """
    samples = samples or settings.DISK_SAMPLES
    w = np.exp(2j * math.pi * np.arange(samples) / samples)
    values = np.array([complex(g(center + radius * wk)) for wk in w])
    coeffs = np.fft.fft(values) / samples
    peak = np.abs(coeffs).max()
    keep = np.flatnonzero(np.abs(coeffs) > 1e-14 * peak)
    coeffs = coeffs[:keep[-1] + 1] if keep.size else coeffs[:1]
    if coeffs.size < 2:
        return np.array([], dtype=complex), np.abs(values).max()
    zeros = polynomial.polyroots(coeffs)
    inside = zeros[np.abs(zeros) < 1.0]
    deriv = polynomial.polyder(coeffs)
    polished = []
    for w0 in inside:
        wk = complex(w0)
        for _ in range(3 if tol is None else 8):
            value = complex(g(center + radius * wk))
            if tol is not None and abs(value) <= tol * (scale(center + radius * wk) if scale else 1.0):
                break
            step = value / polynomial.polyval(wk, deriv)
            if not np.isfinite(step) or abs(step) > 1e-3:
                break
            wk -= step
        polished.append(center + radius * wk)
    return np.array(polished, dtype=complex), np.abs(values).max()
