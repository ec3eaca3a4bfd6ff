"""Trace functions T1, T2, the discriminant rho and the Lyapunov branches.

    T_m = Tr M^m / 4,   rho = (T2 + 1)/2 - T1^2,   T = 4 T1^2 - T2,
    D+- = det(M -+ I) / 4 = (T1 -+ 1)^2 - rho,

and Delta_{1,2} = T1 +- sqrt(rho) are the two branches of the Lyapunov
function. Delta_1 is the branch that grows like cosh(lam^(1/4)).
"""

import cmath
import dataclasses
import logging
import math

import numpy as np

from quartic import hill, quadrature, settings
from quartic.errors import UnsupportedRepresentationError
from quartic.monodromy import monodromy_delta_comb, monodromy_ode, monodromy_series
from quartic.quartic_basis import phi0, principal_quartic_root

logger = logging.getLogger(__name__)

BACKENDS = ('auto', 'ode', 'series', 'delta_comb', 'hill', 'closed')


@dataclasses.dataclass(frozen=True)
class TraceBundle:
    """Trace data at one lambda.

    Values are unscaled; ``scale_exponent`` is the exponent offset the
    underlying monodromy was computed with (0 unless Re z > 500).
    """
    lam: complex
    T1: complex
    T2: complex
    rho: complex
    T: complex
    Dplus: complex
    Dminus: complex
    scale_exponent: float = 0.0
    backend: str = 'ode'
    kappa: float = None

    @property
    def z(self):
        return principal_quartic_root(self.lam).z

    @property
    def scale(self):
        """Magnitude of T1 for the free operator, used for relative comparisons."""
        return math.exp(abs(self.z.real)) if self.lam != 0 else 1.0


@dataclasses.dataclass(frozen=True)
class LyapunovPair:
    lam: float
    delta1: complex
    delta2: complex
    real_branches: bool

    def multipliers(self):
        """Roots of tau^2 - 2 Delta tau + 1 for both branches."""
        out = []
        for delta in (self.delta1, self.delta2):
            root = cmath.sqrt(delta * delta - 1)
            out.extend((delta + root, delta - root))
        return np.array(out)


"""-------------------------------------------------------------------------"""


def free_trace(m, lam):
    """T_m of the free operator, (cos mz + cosh mz) / 2."""
    z = principal_quartic_root(lam).z
    return (cmath.cos(m * z) + cmath.cosh(m * z)) / 2


def _bundle(lam, t1, t2, rho, d_plus=None, d_minus=None, **extra):
    t = 4 * t1 * t1 - t2
    if d_plus is None:
        d_plus = (t1 - 1) ** 2 - rho
    if d_minus is None:
        d_minus = (t1 + 1) ** 2 - rho
    return TraceBundle(complex(lam), t1, t2, rho, t, d_plus, d_minus, **extra)


def _real_fsum(values):
    values = [complex(v) for v in values]
    return complex(math.fsum(v.real for v in values), math.fsum(v.imag for v in values))


def _from_matrix(m, kappa):
    a = m.unscaled()
    t1 = np.trace(a) / 4
    products = (a * a.T).ravel() / 8
    # rho = Tr(M^2)/8 + 1/2 - T1^2, summed exactly
    rho = _real_fsum(list(products) + [0.5, -t1 * t1])
    t2 = 2 * (rho + t1 * t1) - 1
    return _bundle(m.lam, t1, t2, rho, scale_exponent=m.scale_exponent,
                   backend=m.backend, kappa=kappa)


def _free_bundle(lam):
    z = principal_quartic_root(lam).z
    c_plus = (cmath.cosh(z) + cmath.cos(z)) / 2
    c_minus = (cmath.cosh(z) - cmath.cos(z)) / 2
    rho = c_minus * c_minus
    return _bundle(lam, c_plus, 2 * (rho + c_plus * c_plus) - 1, rho,
                   hill.f0(1, z), hill.f0(-1, z), backend='closed', kappa=0.0)


def resolve_backend(potential, lam, backend='auto'):
    if backend not in BACKENDS:
        raise UnsupportedRepresentationError(potential.kind, f"backend {backend!r}")
    if potential.kind == 'delta_comb':
        if backend not in ('auto', 'delta_comb'):
            raise UnsupportedRepresentationError(potential.kind, f"backend {backend!r}")
        return 'delta_comb'
    if backend == 'delta_comb':
        raise UnsupportedRepresentationError(potential.kind, "backend 'delta_comb'")
    if backend == 'closed' and not potential.is_zero:
        raise UnsupportedRepresentationError(potential.kind, "backend 'closed' (V != 0)")
    if backend != 'auto':
        return backend
    if potential.is_zero:
        return 'closed'
    if abs(principal_quartic_root(lam).x) <= settings.ODE_X_LIMIT:
        return 'ode'
    return 'hill'


def trace_bundle(potential, lam, backend='auto', tol=None):
    lam = complex(lam)
    backend = resolve_backend(potential, lam, backend)
    if backend == 'closed':
        return _free_bundle(lam)
    if backend == 'delta_comb':
        return _from_matrix(monodromy_delta_comb(potential.gamma, lam), None)
    kappa = potential.norm_l1() / max(1.0, abs(lam)) ** 0.75
    if backend == 'hill':
        t1, rho, d_plus, d_minus = hill.hill_traces(potential, lam)
        return _bundle(lam, t1, 2 * (rho + t1 * t1) - 1, rho, d_plus, d_minus,
                       backend='hill', kappa=kappa)
    if backend == 'series':
        return _from_matrix(monodromy_series(potential, lam), kappa)
    return _from_matrix(monodromy_ode(potential, lam, tol), kappa)


def lyapunov_pair(potential, lam, backend='auto', tol=None):
    return branches(trace_bundle(potential, float(lam), backend, tol))


def branches(bundle):
    """Label the two branches of a bundle computed at a real lambda."""
    t1 = bundle.T1.real
    rho = bundle.rho.real
    if rho >= 0:
        root = math.sqrt(rho)
        return LyapunovPair(bundle.lam.real, complex(t1 + root), complex(t1 - root), True)
    root = math.sqrt(-rho)
    return LyapunovPair(bundle.lam.real, complex(t1, root), complex(t1, -root), False)


"""-------------------------------------------------------------------------"""


def t_m2(potential, m, lam, tol=None):
    """T_{m,2}(lam) = 1/4 int_0^m phi_3(m - w) phi_3(w) C_m(w) dw.

    C_m is the lag autocorrelation of V, which folds the defining double
    integral over 0 < s < t < m into one integral over the lag w = t - s.
    """
    if m not in (1, 2):
        raise ValueError(f"m must be 1 or 2, got {m!r}")
    if potential.kind == 'delta_comb':
        raise UnsupportedRepresentationError(potential.kind, 't_m2')
    if potential.is_zero:
        return 0j
    lam = complex(lam)

    def integrand(w):
        return 0.25 * phi0(3, m - w, lam) * phi0(3, w, lam) * potential.autocorrelation(w, m)

    re = quadrature.integrate(lambda w: integrand(w).real, 0.0, float(m), tol)
    im = quadrature.integrate(lambda w: integrand(w).imag, 0.0, float(m), tol)
    return complex(re, im)
