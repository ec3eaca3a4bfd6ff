"""High-energy constants and residual tables for eigenvalues and resonances.

With omega = (1, -i, i, -1) (conjugated in the lower half-plane),

    b_jk = omega_j omega_k / (16 z^6) int_0^1 C_1(w) exp(z w (omega_j - omega_k)) dw,
    c_jk = exp(z (omega_j - omega_k)) (b_jk + b_kj),

where C_1 is the lag autocorrelation of V. The alpha_j and beta_jk are
fixed combinations of these, and

    alpha(lam) = (1 + e^((1 - w1) z)) alpha_0 + (1 + e^(-(1 - w1) z)) alpha_1 - 2 beta_01,
    beta(lam) = e^(w1 z) beta_01 + e^(w2 z) beta_02 - 2 alpha_0 cos z

give alpha(-4 (pi n)^4) = |V_n|^2 / (2 pi n)^6 and
beta((pi n)^4) = (-1)^n |V_n|^2 / (16 (pi n)^6).
"""

import cmath
import dataclasses
import logging
import math

import numpy as np

from quartic import hill, quadrature, settings, spectrum
from quartic.errors import DomainError, UnsupportedRepresentationError
from quartic.quartic_basis import principal_quartic_root

logger = logging.getLogger(__name__)

OMEGA = np.array([1.0, -1j, 1j, -1.0])


@dataclasses.dataclass(frozen=True, eq=False)
class AsymptoticConstants:
    lam: complex
    omega: np.ndarray
    b: np.ndarray
    c: np.ndarray
    alpha: np.ndarray
    beta: np.ndarray
    kappa: float = 0.0

    @property
    def z(self):
        return principal_quartic_root(self.lam).z

    def alpha_combination(self):
        z, w1 = self.z, self.omega[1]
        a0, a1 = self.alpha[0], self.alpha[1]
        return ((1 + cmath.exp((1 - w1) * z)) * a0 + (1 + cmath.exp(-(1 - w1) * z)) * a1
                - 2 * self.beta[0, 1])

    def beta_combination(self):
        z, w1, w2 = self.z, self.omega[1], self.omega[2]
        return (cmath.exp(w1 * z) * self.beta[0, 1] + cmath.exp(w2 * z) * self.beta[0, 2]
                - 2 * self.alpha[0] * cmath.cos(z))

    def within_bounds(self):
        """|b_jk| <= ||V||^2 / (32 |z|^6) for j >= k and |alpha_j| <= 3/8 kappa^2."""
        z6 = abs(self.z) ** 6
        lower = np.tril_indices(4)
        norm2 = self.kappa ** 2 * z6
        slack = 1 + 1e-9
        return bool(np.all(np.abs(self.b[lower]) <= slack * norm2 / (32 * z6))
                    and np.all(np.abs(self.alpha) <= slack * 0.375 * self.kappa ** 2))

    def conjugate(self):
        return AsymptoticConstants(self.lam.conjugate(), self.omega.conj(), self.b.conj(),
                                   self.c.conj(), self.alpha.conj(), self.beta.conj(), self.kappa)


def _lag_transforms(potential, rates, tol=None):
    """int_0^1 C_1(w) exp(r w) dw for every rate r, by panel doubling."""
    tol = tol or settings.QUAD_TOL
    rates = np.asarray(rates, dtype=complex)
    panels = max(4, int(math.ceil(np.abs(rates).max() / 4)))
    previous = None
    while panels <= settings.QUAD_MAX_PANELS:
        nodes, weights = quadrature.composite_nodes(0.0, 1.0, panels)
        corr = potential.autocorrelation(nodes, 1)
        current = np.exp(np.multiply.outer(rates, nodes)) @ (weights * corr)
        if previous is not None:
            change = np.abs(current - previous)
            if np.all(change <= tol * np.maximum(1.0, np.abs(current))):
                return current
        previous = current
        panels *= 2
    logger.warning("lag transforms did not converge at %d panels", panels // 2)
    return previous


def asymptotic_constants(potential, lam):
    """b_jk, c_jk, alpha_j and beta_jk at ``lam``."""
    if potential.kind == 'delta_comb':
        raise UnsupportedRepresentationError(potential.kind, 'asymptotic_constants')
    lam = complex(lam)
    if lam == 0:
        raise DomainError("asymptotic constants need lambda != 0")
    if lam.imag < 0:
        return asymptotic_constants(potential, lam.conjugate()).conjugate()
    z = principal_quartic_root(lam).z
    norm = potential.norm_l1()
    kappa = norm / abs(z) ** 3
    diff = OMEGA[:, None] - OMEGA[None, :]
    if potential.is_zero:
        b = np.zeros((4, 4), dtype=complex)
    else:
        transforms = _lag_transforms(potential, (z * diff).ravel()).reshape(4, 4)
        b = np.outer(OMEGA, OMEGA) / (16 * z ** 6) * transforms
    c = np.exp(z * diff) * (b + b.T)
    alpha = np.empty(4, dtype=complex)
    alpha[0] = sum(b[k, 0] + c[k, 0] for k in range(1, 4))
    for j in (1, 2):
        alpha[j] = (sum(b[k, j] + c[k, j] for k in range(j + 1, 4))
                    - sum(b[j, k] for k in range(j)))
    alpha[3] = -sum(b[3, k] for k in range(3))
    beta = alpha[:, None] + alpha[None, :] - c.T
    return AsymptoticConstants(lam, OMEGA.copy(), b, c, alpha, beta, kappa)


"""-------------------------------------------------------------------------"""


@dataclasses.dataclass(frozen=True)
class ResidualRow:
    n: int
    lambda_minus: complex
    lambda_plus: complex
    predicted: float
    residual: float
    normalized_residual: float
    gap: float
    predicted_gap: float
    gap_residual: float

    def as_dict(self):
        return dataclasses.asdict(self)


@dataclasses.dataclass(frozen=True)
class ResidualTable:
    kind: str
    rows: tuple

    @property
    def max_normalized_residual(self):
        return max((r.normalized_residual for r in self.rows), default=0.0)

    def decay_slope(self):
        """Least-squares slope of log|residual| against log n (None if < 2 usable rows)."""
        usable = [(r.n, r.residual) for r in self.rows if r.residual > 0]
        if len(usable) < 2:
            return None
        n, res = np.log(np.array(usable, dtype=float)).T
        return float(np.polyfit(n, res, 1)[0])


def _check_range(n_range):
    n_range = [int(n) for n in n_range]
    if not n_range or min(n_range) < 1:
        raise DomainError("n_range must contain positive integers", n_range=n_range)
    if math.pi * max(n_range) > settings.MAX_PI_N:
        raise DomainError(f"pi * n must stay below {settings.MAX_PI_N}", n_max=max(n_range))
    return n_range


def _row(n, lo, hi, centre, split):
    residual = max(abs(hi - (centre + split)), abs(lo - (centre - split)))
    gap = abs(hi - lo)
    return ResidualRow(n, lo, hi, centre, residual, residual * n ** 1.5,
                       gap, 2 * split, gap - 2 * split)


def _labelled_eigenvalues(potential, n_max, source, backend):
    if source == 'matrix':
        count = n_max + 2
        per = hill.periodic_hill_eigenvalues(potential, count + 1)
        anti = hill.antiperiodic_hill_eigenvalues(potential, count + 1)
        return spectrum.EigenvalueList(tuple(per), (1,) * len(per),
                                       tuple(anti), (1,) * len(anti)).labelled()
    return spectrum.eigenvalues(potential, n_max, backend=backend).labelled()


def check_eigenvalue_asymptotics(potential, n_range, source='determinant', backend='auto'):
    """Residuals of lambda_n^+- = (pi n)^4 +- |V_n| over ``n_range``.

    ``source='matrix'`` takes the eigenvalues from the Hermitian Hill
    matrices instead of the zeros of D+-.
    """
    n_range = _check_range(n_range)
    labelled = _labelled_eigenvalues(potential, max(n_range), source, backend)
    rows = []
    for n in n_range:
        lo, hi = labelled[(n, '-')], labelled[(n, '+')]
        rows.append(_row(n, lo, hi, (math.pi * n) ** 4, abs(potential.fourier_coefficient(n))))
    table = ResidualTable('eigenvalues', tuple(rows))
    logger.info("eigenvalue asymptotics: max normalized residual %.3e", table.max_normalized_residual)
    return table


def check_resonance_asymptotics(potential, n_range, backend='auto'):
    """Residuals of r_n^+- = -4 (pi n)^4 +- sqrt(2) |V_n| over ``n_range``."""
    n_range = _check_range(n_range)
    found = spectrum.resonances(potential, max(n_range), backend=backend)
    rows = []
    for n in n_range:
        lo, hi = found.pairs[n]
        split = math.sqrt(2) * abs(potential.fourier_coefficient(n))
        rows.append(_row(n, lo, hi, -4 * (math.pi * n) ** 4, split))
    table = ResidualTable('resonances', tuple(rows))
    logger.info("resonance asymptotics: max normalized residual %.3e", table.max_normalized_residual)
    return table
