"""Hill-determinant evaluation of the Lyapunov polynomial.

For c = cos(theta) the Lyapunov polynomial

    F(c, lam) = (c - Delta_1)(c - Delta_2) = c^2 - 2 T_1 c + (T - 1) / 2

equals F0(c, lam) det(L(theta) - lam) / prod_k ((2 pi k + theta)^4 - lam),
where L(theta) is the Hill matrix (2 pi k + theta)^4 delta_kl + V_{k-l}
and F0(c) = (c - cosh z)(c - cos z) its V = 0 value. The truncated
determinant converges fast in the number of modes and, unlike
shooting, keeps its relative accuracy when Re z is large.
"""

import cmath
import logging
import math

import numpy as np
from scipy import linalg

from quartic import settings
from quartic.quartic_basis import principal_quartic_root

logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi


def truncation(potential, z):
    h = potential.max_harmonic
    return max(settings.HILL_MIN_MODES,
               int(math.ceil(abs(z) / TWO_PI)) + 2 * h + settings.HILL_MARGIN)


def _log_sine_ratio(u, modes):
    """log of sin(u/2) / prod_{|k| <= K} (u + 2 pi k), modulo 2 pi i."""
    ks = np.arange(-modes, modes + 1)
    factors = u + TWO_PI * ks
    nearest = int(round(-u.real / TWO_PI))
    if abs(nearest) > modes:
        return cmath.log(cmath.sin(u / 2)) - np.sum(np.log(factors))
    v = factors[nearest + modes]
    ratio = 0.5 - v * v / 48 if abs(v) < 1e-4 else cmath.sin(v / 2) / v
    rest = np.delete(factors, nearest + modes)
    return cmath.log(ratio) + 1j * math.pi * nearest - np.sum(np.log(rest))


def _toeplitz(potential, modes):
    col = np.zeros(2 * modes + 1, dtype=complex)
    h = min(potential.max_harmonic, 2 * modes)
    col[1:h + 1] = potential.harmonics[1:h + 1]
    return linalg.toeplitz(col, col.conj())


def f0(c, z):
    """(c - cosh z)(c - cos z), with cancellation-free forms at c = +-1."""
    if c == 1:
        return -4 * cmath.sinh(z / 2) ** 2 * cmath.sin(z / 2) ** 2
    if c == -1:
        return 4 * cmath.cosh(z / 2) ** 2 * cmath.cos(z / 2) ** 2
    return (c - cmath.cosh(z)) * (c - cmath.cos(z))


def lyapunov_polynomial(potential, lam, c):
    """F(c, lam) for a trig potential (sampled ones go through their trig twin)."""
    potential = potential.trig_twin()
    z = principal_quartic_root(lam).z
    c = complex(c)
    if potential.is_zero:
        return f0(c, z)
    modes = truncation(potential, z)
    theta = complex(np.arccos(c))
    w = theta + TWO_PI * np.arange(-modes, modes + 1)
    diag = (w - z) * (w + z) * (w - 1j * z) * (w + 1j * z)
    rows = 1.0 / np.maximum(np.abs(diag), 1.0)
    matrix = _toeplitz(potential, modes)
    matrix[np.diag_indices_from(matrix)] += diag
    sign, logabs = np.linalg.slogdet(rows[:, None] * matrix)
    if sign == 0:
        return 0j
    log_f = math.log(4.0) + cmath.log(sign) + logabs - np.sum(np.log(rows))
    for u in (theta + z, theta - z, theta + 1j * z, theta - 1j * z):
        log_f += _log_sine_ratio(u, modes)
    return cmath.exp(log_f)


def hill_traces(potential, lam):
    """(T1, rho, D+, D-) from four evaluations of the Lyapunov polynomial.

    F(c) = (c - T1)^2 - rho is sampled around c0 = T1 of the free operator.
    """
    z = principal_quartic_root(lam).z
    c_plus = (cmath.cosh(z) + cmath.cos(z)) / 2
    c_minus = (cmath.cosh(z) - cmath.cos(z)) / 2
    d_plus = lyapunov_polynomial(potential, lam, 1.0)
    d_minus = lyapunov_polynomial(potential, lam, -1.0)
    if potential.trig_twin().is_zero:
        return c_plus, c_minus * c_minus, d_plus, d_minus
    h = max(abs(c_minus), 1.0)
    above = lyapunov_polynomial(potential, lam, c_plus + h)
    below = lyapunov_polynomial(potential, lam, c_plus - h)
    centre = lyapunov_polynomial(potential, lam, c_plus)
    slope = (above - below) / (2 * h)
    t1 = c_plus - slope / 2
    rho = slope * slope / 4 - centre
    return t1, rho, d_plus, d_minus


"""-------------------------------------------------------------------------"""


def _hermitian_eigenvalues(potential, count, antiperiodic):
    potential = potential.trig_twin()
    modes = count + 2 * potential.max_harmonic + settings.HILL_MARGIN
    if antiperiodic:
        freq = math.pi * (2 * np.arange(-modes, modes) + 1)
        size = 2 * modes
    else:
        freq = TWO_PI * np.arange(-modes, modes + 1)
        size = 2 * modes + 1
    matrix = _toeplitz(potential, modes)[:size, :size]
    matrix[np.diag_indices_from(matrix)] += freq ** 4
    return linalg.eigh(matrix, eigvals_only=True, subset_by_index=[0, count - 1])


def periodic_hill_eigenvalues(potential, count):
    """The lowest ``count`` periodic eigenvalues from the plane-wave matrix."""
    return _hermitian_eigenvalues(potential, count, antiperiodic=False)


def antiperiodic_hill_eigenvalues(potential, count):
    return _hermitian_eigenvalues(potential, count, antiperiodic=True)
