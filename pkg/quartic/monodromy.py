"""Monodromy matrices M(lam) = M(1, lam) of y'''' + V y = lam y.

Entry (k, j) of M is phi_j^(k)(1, lam). Three backends compute it:
shooting (``monodromy_ode``), the Picard iterates of the integral
equation (``monodromy_series``) and the closed form of the delta comb
(``monodromy_delta_comb``). Stored entries are scaled by
exp(-scale_exponent).
"""

import dataclasses
import functools
import logging
import math

import numpy as np
from scipy.integrate import solve_ivp
from scipy.special import factorial

from quartic import quadrature, settings
from quartic.errors import UnsupportedRepresentationError, RangeExceededError
from quartic.quartic_basis import phi0, phi0_matrix, principal_quartic_root, scale_exponent

logger = logging.getLogger(__name__)


@dataclasses.dataclass(frozen=True, eq=False)
class MonodromyMatrix:
    lam: complex
    entries: np.ndarray
    scale_exponent: float = 0.0
    backend: str = 'ode'
    bound: float = None

    @property
    def scale(self):
        return math.exp(self.scale_exponent)

    def unscaled(self):
        return self.entries * self.scale

    def trace_power(self, m):
        """Tr M^m, unscaled."""
        return np.trace(np.linalg.matrix_power(self.entries, m)) * self.scale ** m

    def det(self):
        return np.linalg.det(self.entries) * self.scale ** 4

    def multipliers(self):
        return np.linalg.eigvals(self.entries) * self.scale

    def entry_bounds(self):
        """Per-entry truncation bound of a series matrix: bound * |lam|_1^((k-j)/4)."""
        if self.bound is None:
            return None
        mod = max(1.0, abs(self.lam)) ** 0.25
        k, j = np.indices((4, 4))
        return self.bound * mod ** (k - j).astype(float)


def char_poly_coeffs(m):
    """Coefficients (xi_0, ..., xi_4) of det(M - tau I) in descending powers of tau.

    Built from traces of powers (Newton identities) so that xi_1 = -Tr M
    exactly; the determinant comes from an LU factorisation.
    """
    a = m.unscaled() if isinstance(m, MonodromyMatrix) else np.asarray(m, dtype=complex)
    p1 = np.trace(a)
    a2 = a @ a
    p2 = np.trace(a2)
    p3 = np.trace(a2 @ a)
    e2 = (p1 * p1 - p2) / 2
    e3 = (p1 ** 3 - 3 * p1 * p2 + 2 * p3) / 6
    return np.array([1.0, -p1, e2, -e3, np.linalg.det(a)], dtype=complex)


"""-------------------------------------------------------------------------"""


def _require_function(potential, backend):
    if potential.kind == 'delta_comb':
        raise UnsupportedRepresentationError(potential.kind, f"monodromy_{backend}")


def monodromy_ode(potential, lam, tol=None):
    """Integrate the first-order system Y' = A(t) Y, Y(0) = I over one period."""
    _require_function(potential, 'ode')
    tol = tol or settings.ODE_RTOL
    lam = complex(lam)
    sigma = scale_exponent(principal_quartic_root(lam).z)

    def rhs(t, y):
        y = y.reshape(4, 4)
        dy = np.empty_like(y)
        dy[:3] = y[1:]
        dy[3] = (lam - potential.evaluate(t)) * y[0]
        if sigma:
            dy -= sigma * y
        return dy.ravel()

    sol = solve_ivp(rhs, (0.0, 1.0), np.eye(4, dtype=complex).ravel(),
                    method=settings.ODE_METHOD, rtol=tol,
                    atol=min(settings.ODE_ATOL, tol * 1e-3),
                    max_step=settings.ODE_MAX_STEP)
    if not sol.success:
        raise RangeExceededError(lam, sol.message)
    logger.debug("ode monodromy at lam=%s: %d rhs evaluations", lam, sol.nfev)
    return MonodromyMatrix(lam, sol.y[:, -1].reshape(4, 4), sigma, 'ode')


@dataclasses.dataclass(frozen=True)
class _Grid:
    nodes: np.ndarray
    weights: np.ndarray
    cumulative: np.ndarray


@functools.lru_cache(maxsize=4)
def _nystrom_grid(panels, q):
    """Nodes on [0, 1] and the matrix of cumulative integrals up to each node and t = 1."""
    nodes, weights = quadrature.composite_nodes(0.0, 1.0, panels, q)
    local = quadrature.local_integration_matrix(q) * (0.5 / panels)
    size = panels * q
    cumulative = np.zeros((size + 1, size))
    for p in range(panels):
        rows = slice(p * q, (p + 1) * q)
        cumulative[rows, :p * q] = weights[:p * q]
        cumulative[rows, p * q:(p + 1) * q] = local
    cumulative[size] = weights
    return _Grid(nodes, weights, cumulative)


def monodromy_series(potential, lam, N=None):
    """Sum of the Picard iterates phi_{n,j}^(k)(1, lam), n <= N.

    phi_{n+1,j}(t) = -int_0^t phi_3(t-s) V(s) phi_{n,j}(s) ds is evaluated
    by Nystrom quadrature on a panel Gauss grid. The returned matrix
    carries the truncation bound (kappa^(N+1) / (N+1)!) exp(x + kappa)
    with kappa = ||V|| / |lam|_1^(3/4).
    """
    _require_function(potential, 'series')
    N = settings.SERIES_MAX_ORDER if N is None else min(int(N), settings.SERIES_MAX_ORDER)
    lam = complex(lam)
    root = principal_quartic_root(lam)
    total = phi0_matrix(1.0, lam)
    kappa = potential.norm_l1() / max(1.0, abs(lam)) ** 0.75
    bound = kappa ** (N + 1) / factorial(N + 1) * math.exp(root.x + kappa)
    if N == 0 or potential.is_zero:
        return MonodromyMatrix(lam, total, 0.0, 'series', bound)

    grid = _nystrom_grid(settings.SERIES_PANELS, settings.SERIES_NODES)
    s = grid.nodes
    targets = np.append(s, 1.0)
    lag = targets[:, None] - s[None, :]
    kernels = [grid.cumulative * phi0(3 - k, lag, lam) for k in range(4)]
    v = potential.evaluate(s)
    row0 = np.stack([phi0(j, s, lam) for j in range(4)], axis=1)
    for n in range(1, N + 1):
        source = -v[:, None] * row0
        iterate = np.stack([kernel @ source for kernel in kernels])
        row0 = iterate[0, :-1, :]
        total = total + iterate[:, -1, :]
    logger.debug("series monodromy at lam=%s: N=%d bound=%.3e", lam, N, bound)
    return MonodromyMatrix(lam, total, 0.0, 'series', bound)


def series_order_for(potential, lam, target):
    """Smallest N whose truncation bound is below ``target``, or None."""
    kappa = potential.norm_l1() / max(1.0, abs(lam)) ** 0.75
    x = principal_quartic_root(lam).x
    for n in range(settings.SERIES_MAX_ORDER + 1):
        if kappa ** (n + 1) / math.factorial(n + 1) * math.exp(x + kappa) < target:
            return n
    return None


def monodromy_delta_comb(gamma, lam):
    """M = J_gamma M0(1); the jump y'''(1+) - y'''(1-) = -gamma y(1) closes the cell."""
    lam = complex(lam)
    sigma = scale_exponent(principal_quartic_root(lam).z)
    jump = np.eye(4, dtype=complex)
    jump[3, 0] = -gamma
    return MonodromyMatrix(lam, jump @ phi0_matrix(1.0, lam, sigma), sigma, 'delta_comb')


def monodromy(potential, lam, backend='ode', tol=None):
    if potential.kind == 'delta_comb':
        if backend not in ('delta_comb', 'auto'):
            raise UnsupportedRepresentationError(potential.kind, f"monodromy_{backend}")
        return monodromy_delta_comb(potential.gamma, lam)
    if backend in ('ode', 'auto'):
        return monodromy_ode(potential, lam, tol)
    if backend == 'series':
        return monodromy_series(potential, lam)
    raise UnsupportedRepresentationError(potential.kind, f"monodromy_{backend}")
