"""The lowest band of y'''' + gamma V y = lam y for small coupling.

For small gamma != 0 the bottom of the spectrum is the resonance
r_0^-(gamma), the band (r_0^-, lambda_0^+) has multiplicity 4 and

    r_0^-, lambda_0^+ = 2 gamma^2 (4 v_1 - v_2) + O(gamma^3),
    lambda_0^+ - r_0^- = 4 A^2 gamma^4 + O(gamma^5),

with v_m = 1/144 int int_{0<s<t<m} V(t) V(s) (m - t + s)^3 (t - s)^3 and
A = v_2 / 12 - 4 v_1 / 3.
"""

import dataclasses
import logging
import math

import numpy as np

from quartic import quadrature, spectrum
from quartic.errors import RootEscapeError, UnsupportedRepresentationError
from quartic.roots import real_zeros
from quartic.traces import t_m2

logger = logging.getLogger(__name__)

SCAN_PER_UNIT = 256


@dataclasses.dataclass(frozen=True)
class SmallGammaConstants:
    v1: float
    v2: float
    A_integral: float
    A_fourier: float
    A_moment: float

    @property
    def leading(self):
        """Coefficient of gamma^2 in both lowest-band endpoints."""
        return 2 * (4 * self.v1 - self.v2)


@dataclasses.dataclass(frozen=True)
class MultiplicityCheck:
    r0_minus: float
    lambda0_plus: float
    interior: tuple
    below: int
    above: int

    @property
    def ok(self):
        return all(m == 4 for m in self.interior) and self.below == 0 and self.above == 2


@dataclasses.dataclass(frozen=True)
class GapRow:
    gamma: float
    r0_minus: float
    lambda0_plus: float
    gap: float
    predicted_leading: float
    predicted_gap: float

    def as_dict(self):
        return dataclasses.asdict(self)


def _require_function(potential, operation):
    if potential.kind == 'delta_comb':
        raise UnsupportedRepresentationError(potential.kind, operation)


def _v(potential, m):
    def integrand(w):
        return (m - w) ** 3 * w ** 3 * potential.autocorrelation(w, m)
    return quadrature.integrate(integrand, 0.0, float(m)) / 144


def v_constants(potential, check=True):
    """(v_1, v_2), cross-checked against T_{m,2}(0) when ``check`` is set."""
    _require_function(potential, 'v_constants')
    if potential.is_zero:
        return 0.0, 0.0
    v1, v2 = _v(potential, 1), _v(potential, 2)
    if check:
        for m, v in ((1, v1), (2, v2)):
            other = t_m2(potential, m, 0.0).real
            if abs(other - v) > 1e-8 * max(abs(v), 1e-300):
                logger.warning("v_%d = %.17g disagrees with T_%d,2(0) = %.17g", m, v, m, other)
    return v1, v2


def a_fourier(potential):
    """A = 5/2 sum_{n != 0} |V_n|^2 / (2 pi n)^6."""
    twin = potential.trig_twin()
    n = np.arange(1, twin.harmonics.size)
    if not n.size:
        return 0.0
    return float(5.0 * np.sum(np.abs(twin.harmonics[1:]) ** 2 / (2 * math.pi * n) ** 6))


def a_moment(potential):
    """A = 1/288 int_0^1 u^2 (2u^4 - 6u^3 + 5u^2 - 1) C_1(u) du."""
    def integrand(u):
        return u ** 2 * (2 * u ** 4 - 6 * u ** 3 + 5 * u ** 2 - 1) * potential.autocorrelation(u, 1)
    return quadrature.integrate(integrand, 0.0, 1.0) / 288


def small_gamma_constants(potential):
    _require_function(potential, 'small_gamma_constants')
    v1, v2 = v_constants(potential)
    return SmallGammaConstants(v1, v2, v2 / 12 - 4 * v1 / 3, a_fourier(potential), a_moment(potential))


"""-------------------------------------------------------------------------"""


def _nearest_root(potential, which, backend, tol=None):
    f = spectrum.evaluator(potential, which, backend)
    roots = real_zeros(lambda s: f(spectrum.lam_of(s)).real,
                       spectrum.s_of(-1.0), spectrum.s_of(1.0), SCAN_PER_UNIT, tol)
    if not roots:
        raise RootEscapeError(f"no zero of {which} in |lambda| < 1", which=which)
    return min((spectrum.lam_of(r.s) for r in roots), key=abs)


def lowest_band(potential, gamma, tol=None, backend='hill'):
    """(r_0^-, lambda_0^+) of gamma V: the zeros of rho and D+ nearest to 0.

    Refined to machine precision unless ``tol`` is given.
    """
    _require_function(potential, 'lowest_band')
    if gamma == 0 or potential.is_zero:
        return 0.0, 0.0
    scaled = potential.scaled(gamma)
    r0 = _nearest_root(scaled, 'rho', backend, tol)
    l0 = _nearest_root(scaled, 'Dplus', backend, tol)
    if r0 > l0:
        raise RootEscapeError(f"gamma={gamma!r}: r0- = {r0!r} lies above lambda0+ = {l0!r}",
                              gamma=gamma, r0_minus=r0, lambda0_plus=l0)
    logger.debug("gamma=%g: r0- = %.17g, lambda0+ = %.17g", gamma, r0, l0)
    return r0, l0


def lowest_band_multiplicity(potential, gamma, points=32, backend='hill'):
    """Classify ``points`` interior points of (r_0^-, lambda_0^+) and one point on each side."""
    r0, l0 = lowest_band(potential, gamma, backend=backend)
    scaled = potential.scaled(gamma)
    width = l0 - r0
    grid = np.linspace(r0, l0, points + 2)[1:-1]
    interior = tuple(spectrum.classify_point(scaled, lam, backend) for lam in grid)
    below = spectrum.classify_point(scaled, r0 - width, backend)
    above = spectrum.classify_point(scaled, l0 + width, backend)
    return MultiplicityCheck(r0, l0, interior, below, above)


def gap_law(potential, gammas, backend='hill'):
    """Lowest-band rows over ``gammas`` and the log-log slope of the gap."""
    constants = small_gamma_constants(potential)
    rows = []
    for gamma in gammas:
        r0, l0 = lowest_band(potential, gamma, backend=backend)
        rows.append(GapRow(gamma, r0, l0, l0 - r0, constants.leading * gamma ** 2,
                           4 * constants.A_integral ** 2 * gamma ** 4))
    return rows, gap_slope(rows)


def gap_slope(rows):
    usable = [(abs(r.gamma), r.gap) for r in rows if r.gamma and r.gap > 0]
    if len(usable) < 2:
        return None
    g, gap = np.log(np.array(usable)).T
    return float(np.polyfit(g, gap, 1)[0])
