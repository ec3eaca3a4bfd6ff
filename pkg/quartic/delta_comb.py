"""Closed forms for the delta comb gamma * sum_n delta(t - n).

    T_1 = c_+ - gamma s_- / (4 z^3),
    rho = c_-^2 - gamma c_- s_+ / (2 z^3) + gamma^2 s_-^2 / (16 z^6)
        = s_-^2 / (4 z^3)^2 (F_+(z) - gamma)(F_-(z) - gamma),

with c_+- = (cosh z +- cos z)/2, s_+- = (sinh z +- sin z)/2 and, on
E_n = (2 pi n, (2n + 1) pi), F_+-(z) = 4 z^3 c_- / (s_+ +- sqrt(sinh z sin z)).

F_+ has one minimum gamma_n on each E_n. It sits exponentially close to
2 pi n, so everything on E_n is evaluated in eps = z - 2 pi n, where
sin z = sin eps and cos z = cos eps are exact.
"""

import cmath
import dataclasses
import logging
import math

import numpy as np
from scipy import optimize

from quartic import settings
from quartic.errors import BracketError, DomainError, RootEscapeError
from quartic.quartic_basis import phi0, principal_quartic_root

logger = logging.getLogger(__name__)

TWO_PI = 2 * math.pi
TINY_EPS = 1e-300
# below this n the collision law is observed numerically rather than proven
ASYMPTOTIC_FROM = 5


def _c_s(z):
    ch, sh, c, s = cmath.cosh(z), cmath.sinh(z), cmath.cos(z), cmath.sin(z)
    return (ch + c) / 2, (ch - c) / 2, (sh + s) / 2, (sh - s) / 2


def traces_delta(gamma, lam):
    """(T_1, rho) of the delta comb at ``lam``."""
    lam = complex(lam)
    z = principal_quartic_root(lam).z
    if abs(z) < settings.SERIES_SWITCH:
        # phi_3(1) = s_- / z^3, through the series near z = 0
        p1 = complex(phi0(3, 1.0, lam))
        p2 = complex(phi0(3, 2.0, lam))
        c_plus, c_minus = _c_s(z)[:2]
        t1_free = c_plus
        t1 = t1_free - gamma * p1 / 4
        rho = c_minus ** 2 - gamma * p2 / 4 + t1_free * gamma * p1 / 2 + (gamma * p1 / 4) ** 2
        return t1, rho
    c_plus, c_minus, s_plus, s_minus = _c_s(z)
    z3 = z ** 3
    t1 = c_plus - gamma * s_minus / (4 * z3)
    rho = c_minus ** 2 - gamma * c_minus * s_plus / (2 * z3) + gamma ** 2 * s_minus ** 2 / (16 * z3 * z3)
    return t1, rho


"""-------------------------------------------------------------------------"""


def _pieces(n, eps):
    z = TWO_PI * n + eps
    ch, sh = cmath.cosh(z), cmath.sinh(z)
    c_minus = (ch - cmath.cos(eps)) / 2
    s_plus = (sh + cmath.sin(eps)) / 2
    root_u = cmath.sqrt(sh * cmath.sin(eps))
    return z, c_minus, s_plus, root_u


def f_plus_eps(n, eps):
    """F_+(2 pi n + eps); eps may be complex with Re eps > 0."""
    z, c_minus, s_plus, root_u = _pieces(n, eps)
    value = 4 * z ** 3 * c_minus / (s_plus + root_u)
    return value.real if isinstance(eps, float) else value


def f_minus_eps(n, eps):
    z, c_minus, s_plus, root_u = _pieces(n, eps)
    value = 4 * z ** 3 * c_minus / (s_plus - root_u)
    return value.real if isinstance(eps, float) else value


def locate(z):
    """(n, eps) with z = 2 pi n + eps and 0 < eps < pi, or DomainError."""
    z = float(z)
    n = int(math.floor(z / TWO_PI))
    eps = z - TWO_PI * n
    if n < 1 or not 0 < eps < math.pi:
        raise DomainError(f"z = {z!r} lies in no interval (2 pi n, (2n+1) pi), n >= 1", z=z)
    return n, eps


def F_pm(z):
    """(F_+(z), F_-(z)) for real z in some E_n."""
    n, eps = locate(z)
    return f_plus_eps(n, eps), f_minus_eps(n, eps)


def rho_factored(gamma, z):
    """s_-^2 / (4 z^3)^2 (F_+ - gamma)(F_- - gamma) at real z in E_n."""
    f_plus, f_minus = F_pm(z)
    s_minus = (math.sinh(z) - math.sin(z)) / 2
    return s_minus ** 2 / (16 * z ** 6) * (f_plus - gamma) * (f_minus - gamma)


"""-------------------------------------------------------------------------"""


@dataclasses.dataclass(frozen=True)
class DeltaCombCritical:
    n: int
    eps_n: float
    gamma_n: float
    Fpp: float
    slope: float

    @property
    def z_n(self):
        return TWO_PI * self.n + self.eps_n

    @property
    def nu_max(self):
        """Half-width of the coupling bracket where F_+ is still quadratic around z_n."""
        return self.Fpp * self.eps_n ** 2 / 8


def _first_difference(n, eps, h):
    return (f_plus_eps(n, eps + h) - f_plus_eps(n, eps - h)) / (2 * h)


def _second_difference(n, eps, h):
    return (f_plus_eps(n, eps + h) - 2 * f_plus_eps(n, eps) + f_plus_eps(n, eps - h)) / (h * h)


def critical_gamma(n, tol=None):
    """Minimiser z_n of F_+ on E_n, gamma_n = F_+(z_n) and F_+''(z_n)."""
    tol = tol or settings.ROOT_TOL
    n = int(n)
    if n < 1:
        raise DomainError(f"n must be >= 1, got {n}", n=n)
    lo, hi = math.log(TINY_EPS), math.log(math.pi / 2)
    found = optimize.minimize_scalar(lambda t: f_plus_eps(n, math.exp(t)), bounds=(lo, hi),
                                     method='bounded', options={'xatol': 1e-10})
    t = found.x
    if min(t - lo, hi - t) < 1e-6:
        raise RootEscapeError(f"F_+ minimum on E_{n} found at the interval boundary", n=n, log_eps=t)
    eps = math.exp(t)
    for _ in range(8):
        h = eps / 10
        step = _first_difference(n, eps, h) / _second_difference(n, eps, h)
        eps_next = min(max(eps - step, eps / 2), 2 * eps)
        if abs(eps_next - eps) <= tol * eps:
            eps = eps_next
            break
        eps = eps_next
    h = eps / 10
    # Richardson on the second difference
    fpp = (4 * _second_difference(n, eps, h / 2) - _second_difference(n, eps, h)) / 3
    result = DeltaCombCritical(n, eps, f_plus_eps(n, eps), fpp, _first_difference(n, eps, h / 2))
    logger.info("gamma_%d = %.17g at z_%d = 2 pi %d + %.6e, F'' = %.6e",
                n, result.gamma_n, n, n, eps, fpp)
    return result


@dataclasses.dataclass(frozen=True)
class ResonancePair:
    n: int
    gamma: float
    nu: float
    r_plus: complex
    r_minus: complex
    observed_only: bool

    @property
    def real(self):
        return self.r_plus.imag == 0 and self.r_minus.imag == 0

    def predicted_split(self, critical):
        """8 z_n^3 sqrt(2 nu / F'') for nu > 0."""
        return 8 * critical.z_n ** 3 * math.sqrt(2 * abs(self.nu) / critical.Fpp)

    def as_row(self):
        return {'gamma': self.gamma,
                're_r_plus': self.r_plus.real, 'im_r_plus': self.r_plus.imag,
                're_r_minus': self.r_minus.real, 'im_r_minus': self.r_minus.imag}


def _double_root_check(n, critical):
    lam = critical.z_n ** 4
    _, rho = traces_delta(critical.gamma_n, lam)
    c_minus = _c_s(critical.z_n)[1]
    if abs(rho) > 1e-6 * abs(c_minus) ** 2:
        logger.warning("rho at the double root z_%d^4 is %.3e", n, abs(rho))
    step = critical.eps_n / 2
    left = rho_factored(critical.gamma_n, critical.z_n - step)
    right = rho_factored(critical.gamma_n, critical.z_n + step)
    if left * right <= 0:
        logger.warning("rho changes sign across the double root z_%d^4", n)


def resonance_pair(n, gamma, tol=None, critical=None):
    """The two zeros of F_+(z) = gamma near z_n, mapped to lambda = z^4."""
    critical = critical or critical_gamma(n, tol)
    nu = gamma - critical.gamma_n
    if abs(nu) > critical.nu_max:
        raise BracketError(n, nu, critical.nu_max)
    eps_n = critical.eps_n
    observed = n < ASYMPTOTIC_FROM

    def shifted(eps):
        return f_plus_eps(n, eps) - gamma

    if nu == 0:
        _double_root_check(n, critical)
        lam = complex(critical.z_n ** 4)
        return ResonancePair(n, gamma, nu, lam, lam, observed)
    if nu > 0:
        hi = 2 * eps_n
        while shifted(hi) <= 0 and hi < math.pi / 2:
            hi = min(2 * hi, math.pi / 2)
        left = optimize.brentq(shifted, TINY_EPS, eps_n, xtol=1e-15 * eps_n, maxiter=400)
        right = optimize.brentq(shifted, eps_n, hi, xtol=1e-15 * eps_n, maxiter=400)
        r_minus, r_plus = (TWO_PI * n + left) ** 4, (TWO_PI * n + right) ** 4
        return ResonancePair(n, gamma, nu, complex(r_plus), complex(r_minus), observed)
    seed = complex(eps_n, math.sqrt(2 * abs(nu) / critical.Fpp))
    # z = 2 pi n + eps is only known to ~1e-15 |z|; stop the secant there
    root = complex(optimize.newton(shifted, seed, x1=seed * (1 + 1e-6j), tol=1e-13 * critical.z_n,
                                   maxiter=100, disp=False))
    if root.imag < 0:
        root = root.conjugate()
    r_plus = (TWO_PI * n + root) ** 4
    return ResonancePair(n, gamma, nu, r_plus, r_plus.conjugate(), observed)


def sweep_gammas(critical, steps=21, fraction=0.9):
    """Couplings evenly spread over the validated bracket around gamma_n."""
    span = fraction * critical.nu_max
    return list(critical.gamma_n + np.linspace(-span, span, steps))
