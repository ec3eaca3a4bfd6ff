"""The principal quartic root and the V = 0 fundamental solutions.

phi_j(t, lam), j = 0..3, solve y'''' = lam y with phi_j^(k)(0) = delta_jk:

    phi_0 = (cosh zt + cos zt) / 2        phi_1 = (sinh zt + sin zt) / 2z
    phi_2 = (cosh zt - cos zt) / 2z^2     phi_3 = (sinh zt - sin zt) / 2z^3

with z = lam^(1/4), arg z in (-pi/4, pi/4].
"""

import cmath
import dataclasses
import math

import numpy as np
from scipy.special import factorial

from quartic import settings

PI = math.pi


@dataclasses.dataclass(frozen=True)
class QuarticRoot:
    lam: complex
    z: complex

    @property
    def x(self):
        return self.z.real

    @property
    def y(self):
        return self.z.imag


def principal_quartic_root(lam):
    lam = complex(lam)
    if lam == 0:
        return QuarticRoot(lam, 0j)
    theta = cmath.phase(lam)
    if theta == -PI:
        theta = PI
    return QuarticRoot(lam, abs(lam) ** 0.25 * cmath.exp(0.25j * theta))


def in_domain_D(root, r):
    """True iff |z| > r and z keeps pi/4 away from pi n and (1 +- i) pi n."""
    z = root.z
    if abs(z) <= r:
        return False
    base = max(0, round(z.real / PI))
    for n in (base - 1, base, base + 1):
        if n >= 0 and abs(z - PI * n) <= PI / 4:
            return False
    for direction in (1 + 1j, 1 - 1j):
        base = max(0, round((z * direction.conjugate()).real / (2 * PI)))
        for n in (base - 1, base, base + 1):
            if n >= 0 and abs(z - direction * PI * n) <= PI / 4:
                return False
    return True


"""-------------------------------------------------------------------------"""


def scale_exponent(z, t=1.0):
    return max(0.0, abs(complex(z).real) * t - settings.SCALE_THRESHOLD)


def _series(j, t, lam):
    k = np.arange(settings.SERIES_TERMS)
    powers = 4 * k + j
    terms = lam ** k / factorial(powers)
    return np.power.outer(t, powers) @ terms


def _closed(j, t, z, sigma):
    zt = z * t
    ep, em = np.exp(zt - sigma), np.exp(-zt - sigma)
    ip, im = np.exp(1j * zt - sigma), np.exp(-1j * zt - sigma)
    if j == 0:
        return 0.25 * (ep + em + ip + im)
    if j == 1:
        return 0.25 * (ep - em - 1j * (ip - im)) / z
    if j == 2:
        return 0.25 * (ep + em - ip - im) / z ** 2
    return 0.25 * (ep - em + 1j * (ip - im)) / z ** 3


def phi0(j, t, lam, sigma=0.0):
    """phi_j(t, lam) times exp(-sigma); vectorised over t."""
    if j not in (0, 1, 2, 3):
        raise ValueError(f"phi0 index must be 0..3, got {j!r}")
    lam = complex(lam)
    z = principal_quartic_root(lam).z
    t = np.asarray(t, dtype=float)
    small = np.abs(z * t) < settings.SERIES_SWITCH
    out = np.empty(t.shape, dtype=complex)
    if np.any(small):
        out[small] = _series(j, t[small], lam) * math.exp(-sigma)
    if not np.all(small):
        out[~small] = _closed(j, t[~small], z, sigma)
    return out if out.ndim else complex(out)


def phi0_matrix(t, lam, sigma=0.0):
    """M0(t)_{kj} = d^k/dt^k phi_j = phi_{j-k}, with phi_{-i} = lam phi_{4-i}."""
    lam = complex(lam)
    phis = [phi0(j, t, lam, sigma) for j in range(4)]
    m = np.empty((4, 4), dtype=complex)
    for k in range(4):
        for j in range(4):
            m[k, j] = phis[(j - k) % 4] * (lam if j < k else 1.0)
    return m
