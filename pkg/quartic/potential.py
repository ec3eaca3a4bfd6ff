"""Mean-zero 1-periodic potentials.

Three representations are supported:

* ``trig``: a real trigonometric polynomial given by its Fourier
  coefficients V_n, |n| <= H, with V_0 = 0 and V_{-n} = conj(V_n);
* ``sampled``: M real samples on the uniform grid k/M of [0, 1), read
  through Fourier interpolation (default), linear (``order=1``) or
  periodic cubic spline (``order=3``) interpolation;
* ``delta_comb``: the distribution gamma * sum_n delta(t - n).
"""

import dataclasses
import functools
import logging

import numpy as np
from scipy import integrate as sp_integrate
from scipy.interpolate import CubicSpline

from quartic import quadrature, settings
from quartic.errors import InvalidPotentialError, UnsupportedRepresentationError

logger = logging.getLogger(__name__)

KINDS = ('trig', 'sampled', 'delta_comb')
MEAN_TOL = 1e-12


def _memoized(method):
    """Cache a no-argument method in the instance dict."""
    @functools.wraps(method)
    def wrapper(self):
        memo = self.__dict__.setdefault('_memo', {})
        if method.__name__ not in memo:
            memo[method.__name__] = method(self)
        return memo[method.__name__]
    return wrapper


@dataclasses.dataclass(frozen=True, eq=False)
class PeriodicPotential:
    """Immutable mean-zero potential.

    Attributes
    -----------
    kind: str
        One of ``'trig'``, ``'sampled'`` or ``'delta_comb'``.
    harmonics: numpy.ndarray
        V_n for n = 0..H (trig only; V_0 is always 0).
    values: numpy.ndarray
        Samples on the grid k/M (sampled only).
    order: int or None
        Interpolation order of a sampled potential, None for Fourier.
    gamma: float
        Coupling of a delta comb.
    """
    kind: str
    harmonics: np.ndarray = None
    values: np.ndarray = None
    order: int = None
    gamma: float = 0.0

    """---------------------------------------------------------------------"""

    def __post_init__(self):
        if self.kind not in KINDS:
            raise InvalidPotentialError(f"unknown potential kind {self.kind!r}")
        if self.kind == 'trig':
            h = np.asarray(self.harmonics, dtype=complex)
            if h.size and h[0] != 0:
                raise InvalidPotentialError("V_0 must be zero (mean-zero potential)",
                                            mean=[h[0].real, h[0].imag])
            h.flags.writeable = False
            object.__setattr__(self, 'harmonics', h)
        elif self.kind == 'sampled':
            v = np.asarray(self.values, dtype=float)
            if v.ndim != 1 or v.size < 2:
                raise InvalidPotentialError("sampled potential needs at least two samples")
            if not np.all(np.isfinite(v)):
                raise InvalidPotentialError("sampled potential has non-finite values")
            if abs(v.mean()) > MEAN_TOL * max(1.0, np.abs(v).max()):
                raise InvalidPotentialError("sampled potential has nonzero mean",
                                            mean=float(v.mean()))
            if self.order not in (None, 1, 3):
                raise InvalidPotentialError(f"unsupported interpolation order {self.order!r}")
            v.flags.writeable = False
            object.__setattr__(self, 'values', v)
        else:
            if not np.isfinite(self.gamma):
                raise InvalidPotentialError("delta comb coupling must be finite")
            object.__setattr__(self, 'gamma', float(self.gamma))

    def __repr__(self):
        if self.kind == 'trig':
            return f"<PeriodicPotential trig H={self.max_harmonic}>"
        if self.kind == 'sampled':
            return f"<PeriodicPotential sampled M={self.values.size} order={self.order}>"
        return f"<PeriodicPotential delta_comb gamma={self.gamma!r}>"

    """---------------------------------------------------------------------"""

    @property
    def max_harmonic(self):
        if self.kind == 'trig':
            return max(self.harmonics.size - 1, 0)
        if self.kind == 'sampled':
            return self.trig_twin().max_harmonic
        raise UnsupportedRepresentationError(self.kind, 'max_harmonic')

    @property
    def is_zero(self):
        if self.kind == 'trig':
            return not np.any(self.harmonics)
        if self.kind == 'sampled':
            return not np.any(self.values)
        return self.gamma == 0.0

    def _require_function(self, operation):
        if self.kind == 'delta_comb':
            raise UnsupportedRepresentationError(self.kind, operation)

    @_memoized
    def trig_twin(self):
        """The trigonometric polynomial interpolating a sampled potential."""
        if self.kind == 'trig':
            return self
        self._require_function('trig_twin')
        m = self.values.size
        spectrum = np.fft.fft(self.values) / m
        top = (m - 1) // 2
        harmonics = spectrum[:top + 1].copy()
        harmonics[0] = 0.0
        if m % 2 == 0:
            # Nyquist mode split evenly between +-M/2
            harmonics = np.append(harmonics, 0.5 * spectrum[m // 2])
        significant = np.flatnonzero(np.abs(harmonics) > 1e-13 * np.abs(self.values).max())
        top = significant[-1] if significant.size else 0
        return PeriodicPotential('trig', harmonics=harmonics[:top + 1])

    """---------------------------------------------------------------------"""

    def fourier_coefficient(self, n):
        self._require_function('fourier_coefficient')
        n = int(n)
        if n == 0:
            return 0j
        if self.kind == 'trig':
            if abs(n) >= self.harmonics.size:
                return 0j
            c = complex(self.harmonics[abs(n)])
            return c if n > 0 else c.conjugate()
        if self.order is None:
            return self.trig_twin().fourier_coefficient(n)
        re = quadrature.integrate(lambda t: self.evaluate(t) * np.cos(2 * np.pi * n * t), 0.0, 1.0)
        im = quadrature.integrate(lambda t: -self.evaluate(t) * np.sin(2 * np.pi * n * t), 0.0, 1.0)
        return complex(re, im)

    def fourier_vector(self, span):
        """Coefficients V_k for k = -span..span as one array."""
        return np.array([self.fourier_coefficient(k) for k in range(-span, span + 1)])

    def evaluate(self, t):
        self._require_function('evaluate')
        t = np.mod(np.asarray(t, dtype=float), 1.0)
        if self.kind == 'trig' or self.order is None:
            h = self.trig_twin().harmonics
            n = np.arange(1, h.size)
            phase = np.exp(2j * np.pi * np.multiply.outer(t, n))
            return 2.0 * np.real(phase @ h[1:])
        if self.order == 1:
            grid = np.arange(self.values.size) / self.values.size
            return np.interp(t, grid, self.values, period=1.0)
        return self._spline()(t)

    @_memoized
    def _spline(self):
        m = self.values.size
        grid = np.arange(m + 1) / m
        return CubicSpline(grid, np.append(self.values, self.values[0]), bc_type='periodic')

    @_memoized
    def norm_l1(self):
        """The L1 norm of V over one period."""
        self._require_function('norm_l1')
        if self.is_zero:
            return 0.0
        value, _ = sp_integrate.quad(lambda t: abs(float(self.evaluate(t))), 0.0, 1.0,
                                     limit=500, epsabs=settings.QUAD_TOL, epsrel=settings.QUAD_TOL)
        return value

    def strength(self):
        """||V||, reading the delta comb's mass |gamma| as its norm."""
        if self.kind == 'delta_comb':
            return abs(self.gamma)
        return self.norm_l1()

    def autocorrelation(self, w, m=1):
        """C_m(w) = integral over [w, m] of V(t) V(t - w), for 0 <= w <= m.

        Every double integral of the form
        int_0^m int_0^t V(t) V(s) k(t - s, ...) ds dt reduces to a single
        integral of C_m against the lag kernel.
        """
        self._require_function('autocorrelation')
        w = np.atleast_1d(np.asarray(w, dtype=float))
        if self.kind == 'trig' or self.order is None:
            return self._autocorrelation_trig(w, m)
        nodes, weights = quadrature.composite_nodes(0.0, 1.0, max(32, self.values.size))
        out = np.empty_like(w)
        for i, lag in enumerate(w):
            t = lag + (m - lag) * nodes
            out[i] = (m - lag) * np.dot(weights, self.evaluate(t) * self.evaluate(t - lag))
        return out

    def _autocorrelation_trig(self, w, m):
        twin = self.trig_twin()
        h = twin.max_harmonic
        if h == 0:
            return np.zeros_like(w)
        idx = np.arange(-h, h + 1)
        coef = twin.fourier_vector(h)
        k = idx[:, None] + idx[None, :]
        pair = coef[:, None] * coef[None, :]
        ww = w[:, None, None]
        with np.errstate(divide='ignore', invalid='ignore'):
            g = np.where(k == 0, m - ww,
                         (1.0 - np.exp(2j * np.pi * k * ww)) / (2j * np.pi * np.where(k == 0, 1, k)))
        total = (pair * np.exp(-2j * np.pi * idx[None, None, :] * ww) * g).sum(axis=(1, 2))
        return total.real

    def scaled(self, gamma):
        """The potential gamma * V in the same representation."""
        if self.kind == 'trig':
            return PeriodicPotential('trig', harmonics=gamma * self.harmonics)
        if self.kind == 'sampled':
            return PeriodicPotential('sampled', values=gamma * self.values, order=self.order)
        return PeriodicPotential('delta_comb', gamma=gamma * self.gamma)

    """---------------------------------------------------------------------"""

    def to_spec(self):
        if self.kind == 'trig':
            return {'kind': 'trig',
                    'coeffs': [[n, c.real, c.imag] for n, c in enumerate(self.harmonics) if n and c]}
        if self.kind == 'sampled':
            spec = {'kind': 'sampled', 'values': self.values.tolist()}
            if self.order is not None:
                spec['order'] = self.order
            return spec
        return {'kind': 'delta_comb', 'gamma': self.gamma}


def zero():
    return PeriodicPotential('trig', harmonics=np.zeros(1, dtype=complex))


def trig(coeffs):
    """Build a trig potential from ``{n: V_n}`` or ``[[n, re, im], ...]``.

    Only one of n, -n needs to be given; if both are, they must be
    conjugate.
    """
    if not isinstance(coeffs, dict):
        coeffs = {int(n): complex(re, im) for n, re, im in coeffs}
    given = {int(n): complex(c) for n, c in coeffs.items()}
    top = max((abs(n) for n in given), default=0)
    harmonics = np.zeros(top + 1, dtype=complex)
    for n, c in given.items():
        if n == 0:
            if c != 0:
                raise InvalidPotentialError("V_0 must be zero (mean-zero potential)",
                                            mean=[c.real, c.imag])
            continue
        value = c if n > 0 else c.conjugate()
        mirror = given.get(-n)
        if mirror is not None and abs(mirror.conjugate() - c) > 1e-14 * max(1.0, abs(c)):
            raise InvalidPotentialError(f"V_{-n} must be the conjugate of V_{n}", n=n)
        harmonics[abs(n)] = value
    return PeriodicPotential('trig', harmonics=harmonics)


def from_cosines(amplitudes):
    """V(t) = sum_n a_n cos(2 pi n t) for ``{n: a_n}``."""
    return trig({n: 0.5 * a for n, a in amplitudes.items()})


def sampled(values, order=None):
    return PeriodicPotential('sampled', values=values, order=order)


def delta_comb(gamma):
    return PeriodicPotential('delta_comb', gamma=gamma)


def from_spec(spec):
    """Parse the JSON potential description."""
    if not isinstance(spec, dict) or 'kind' not in spec:
        raise InvalidPotentialError("potential spec must be an object with a 'kind'")
    kind = spec['kind']
    try:
        if kind == 'trig':
            return trig(spec.get('coeffs', []))
        if kind == 'sampled':
            return sampled(spec['values'], spec.get('order'))
        if kind == 'delta_comb':
            return delta_comb(float(spec['gamma']))
    except (KeyError, TypeError) as e:
        raise InvalidPotentialError(f"malformed {kind} potential spec: {e}") from e
    raise InvalidPotentialError(f"unknown potential kind {kind!r}")
