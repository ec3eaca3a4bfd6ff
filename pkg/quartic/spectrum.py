"""Periodic and antiperiodic eigenvalues, resonances and band structure.

Zeros are searched for inside the regions where their number is known
in advance:

* D+ has 2N+1 zeros in |z| < pi(2N+1) and two in every |z - pi n| < pi/2,
  n even, beyond it;
* D- has 2N zeros in |z| < 2 pi N and two in every |z - pi n| < pi/2,
  n odd, beyond it;
* rho has 2N+1 zeros in |lam| < 4 (pi (N + 1/2))^4 and two in every
  |z - (1 + i) pi n| < pi/4 beyond it,

with N the smallest integer above ||V||^(1/3). Every region is counted
by the argument principle and the count must match the located zeros.
Real lambdas are parametrised by s with lam = s^4 (s >= 0) or
lam = -4 s^4 (s < 0), so that the grid is uniform in |z|.
"""

import dataclasses
import logging
import math

import numpy as np

from quartic import hill, settings
from quartic.errors import CountMismatchError, RootEscapeError, ZeroOnContourError
from quartic.quartic_basis import principal_quartic_root
from quartic.roots import Circle, RealRoot, count_zeros, disk_roots, merge_roots, real_zeros
from quartic.traces import branches, trace_bundle

logger = logging.getLogger(__name__)

PI = math.pi
SQRT2 = math.sqrt(2.0)
REAL_AXIS_TOL = 1e-8


def lam_of(s):
    return s ** 4 if s >= 0 else -4.0 * s ** 4


def s_of(lam):
    return lam ** 0.25 if lam >= 0 else -(-lam / 4.0) ** 0.25


def residual_scale(lam, which):
    """Size of D+- (e^(|x|+|y|)) or rho (e^(2 max(|x|, |y|))) of the free operator at lam."""
    z = principal_quartic_root(lam).z
    x, y = abs(z.real), abs(z.imag)
    exponent = 2 * max(x, y) if which.startswith('rho') else x + y
    return math.exp(min(exponent, 700.0))


def region_index(potential):
    """Smallest integer N >= 1 with N > ||V||^(1/3)."""
    return int(math.floor(potential.strength() ** (1.0 / 3.0))) + 1


def spectral_backend(potential, backend='auto'):
    if backend != 'auto':
        return backend
    if potential.kind == 'delta_comb':
        return 'delta_comb'
    return 'closed' if potential.is_zero else 'hill'


def evaluator(potential, which, backend='auto'):
    """Callable lam -> D+, D-, rho or rho rebuilt from D+- alone."""
    backend = spectral_backend(potential, backend)
    if backend == 'hill' and which in ('Dplus', 'Dminus', 'rho_recovered'):
        def d_plus(lam):
            return hill.lyapunov_polynomial(potential, lam, 1.0)

        def d_minus(lam):
            return hill.lyapunov_polynomial(potential, lam, -1.0)
    else:
        def d_plus(lam):
            return trace_bundle(potential, lam, backend).Dplus

        def d_minus(lam):
            return trace_bundle(potential, lam, backend).Dminus

    if which == 'Dplus':
        return d_plus
    if which == 'Dminus':
        return d_minus
    if which == 'rho':
        return lambda lam: trace_bundle(potential, lam, backend).rho
    if which == 'rho_recovered':
        def rho(lam):
            dp, dm = d_plus(lam), d_minus(lam)
            t1 = (dm - dp) / 4
            return (t1 - 1) ** 2 - dp
        return rho
    raise ValueError(f"unknown function {which!r}")


"""-------------------------------------------------------------------------"""


@dataclasses.dataclass(frozen=True)
class RegionCount:
    name: str
    expected: int
    counted: int
    found: int


@dataclasses.dataclass(frozen=True)
class EigenvalueList:
    periodic: tuple
    periodic_multiplicity: tuple
    antiperiodic: tuple
    antiperiodic_multiplicity: tuple
    regions: tuple = ()

    def labelled(self):
        """{(n, '+'/'-'): lambda} with lambda_0^+, lambda_2^-, lambda_2^+, ... and the odd ones."""
        out = {}
        periodic = [lam for lam, m in zip(self.periodic, self.periodic_multiplicity) for _ in range(m)]
        antiperiodic = [lam for lam, m in zip(self.antiperiodic, self.antiperiodic_multiplicity)
                        for _ in range(m)]
        for i, lam in enumerate(periodic):
            if i == 0:
                out[(0, '+')] = lam
            else:
                out[(2 * ((i + 1) // 2), '-' if i % 2 else '+')] = lam
        for i, lam in enumerate(antiperiodic):
            out[(2 * (i // 2) + 1, '+' if i % 2 else '-')] = lam
        return out


@dataclasses.dataclass(frozen=True)
class ResonanceList:
    real: tuple
    real_multiplicity: tuple
    complex: tuple
    pairs: dict
    regions: tuple = ()

    @property
    def r0_minus(self):
        return max(self.real) if self.real else None

    def all(self):
        """Every resonance, complex pairs expanded with both members."""
        values = [complex(r) for r, m in zip(self.real, self.real_multiplicity) for _ in range(m)]
        for r in self.complex:
            values.extend((complex(r), complex(r).conjugate()))
        return values


@dataclasses.dataclass(frozen=True)
class Band:
    lo: float
    hi: float
    multiplicity: int
    monotone: bool = True


@dataclasses.dataclass(frozen=True)
class Gap:
    lo: float
    hi: float
    kind: str
    lo_label: str = None
    hi_label: str = None


@dataclasses.dataclass(frozen=True)
class BandStructure:
    bands: tuple
    gaps: tuple
    closed_gaps: tuple


"""-------------------------------------------------------------------------"""


def _counted(f, center, radius, plane, name):
    """Argument-principle count, nudging the radius off a zero on the contour."""
    for attempt in range(4):
        circle = Circle(center, radius * (1 + 0.01 * attempt), plane)
        try:
            return circle, count_zeros(f, circle)
        except ZeroOnContourError:
            logger.info("%s: zero on contour %s, enlarging radius", name, circle)
    raise ZeroOnContourError(f"{name}: no zero-free contour found", region=name)


def _real_scan(f, s_lo, s_hi, which, tol=None, per_unit=None):
    return real_zeros(lambda s: f(lam_of(s)).real, s_lo, s_hi, per_unit, tol,
                      lambda s: residual_scale(lam_of(s), which))


def _check(name, expected, counted, found):
    if counted != found or counted != expected:
        raise CountMismatchError(name, counted, found)
    logger.info("%s: %d zeros", name, found)
    return RegionCount(name, expected, counted, found)


def _expand(roots):
    lams, mults = [], []
    for root in sorted(roots, key=lambda r: lam_of(r.s)):
        lams.append(lam_of(root.s))
        mults.append(root.multiplicity)
    return lams, mults


def _eigenvalues(potential, n_max, which, backend, tol):
    f = evaluator(potential, which, backend)
    big_n = region_index(potential)
    if which == 'Dplus':
        main_radius, expected, labels = PI * (2 * big_n + 1), 2 * big_n + 1, range(2 * big_n + 2, n_max + 1, 2)
    else:
        main_radius, expected, labels = 2 * PI * big_n, 2 * big_n, range(2 * big_n + 1, n_max + 1, 2)
    name = f"{which} |z| < {main_radius:.6g}"
    circle, counted = _counted(f, 0j, main_radius ** 4, 'lambda', name)
    radius_z = circle.radius ** 0.25
    roots = _real_scan(f, -radius_z / SQRT2, radius_z, which, tol)
    regions = [_check(name, expected, counted, sum(r.multiplicity for r in roots))]
    for n in labels:
        name = f"{which} |z - {n}pi| < pi/2"
        circle, counted = _counted(f, PI * n, PI / 2, 'z', name)
        local = _real_scan(f, PI * n - circle.radius, PI * n + circle.radius, which, tol)
        regions.append(_check(name, 2, counted, sum(r.multiplicity for r in local)))
        roots.extend(local)
    return _expand(roots), tuple(regions)


def periodic_eigenvalues(potential, n_max=10, tol=None, backend='auto'):
    """Zeros of D+ (labels lambda_n^+-, n even, up to n_max).

    With ``tol`` each zero is refined to relative position tol and
    |D+| <= tol * residual_scale; without it, to machine precision.
    """
    (lams, mults), regions = _eigenvalues(potential, n_max, 'Dplus', backend, tol)
    return tuple(lams), tuple(mults), regions


def antiperiodic_eigenvalues(potential, n_max=10, tol=None, backend='auto'):
    """Zeros of D- (labels lambda_n^+-, n odd, up to n_max)."""
    (lams, mults), regions = _eigenvalues(potential, n_max, 'Dminus', backend, tol)
    return tuple(lams), tuple(mults), regions


def eigenvalues(potential, n_max=10, tol=None, backend='auto'):
    p, pm, pr = periodic_eigenvalues(potential, n_max, tol, backend)
    a, am, ar = antiperiodic_eigenvalues(potential, n_max, tol, backend)
    return EigenvalueList(p, pm, a, am, pr + ar)


"""-------------------------------------------------------------------------"""


def _disk_segment(n, radius):
    """s-interval where the real axis crosses |z - (1 + i) pi n| < radius."""
    half = radius / SQRT2
    return -PI * n - half, -PI * n + half


def _rho_scale(lam):
    return residual_scale(lam, 'rho')


def _complex_in_disk(f, n, radius, needed, name, tol=None):
    """Upper zeros of f in the n-th resonance disk, plus real ones the scan missed.

    A double real zero that evaluation noise hides from the real scan
    still shows up among the disk zeros, on (or within REAL_AXIS_TOL of)
    the real axis; those fill the count as real roots.
    """
    if needed <= 0:
        return [], []
    zeros, _ = disk_roots(lambda z: f(z ** 4), (1 + 1j) * PI * n, radius,
                          tol=tol, scale=lambda z: _rho_scale(z ** 4))
    lams = [complex(z) ** 4 for z in zeros]
    upper = sorted((lam for lam in lams if lam.imag > REAL_AXIS_TOL * abs(lam)),
                   key=lambda lam: -lam.imag)[:needed // 2]
    missing = needed - 2 * len(upper)
    on_axis = sorted((lam for lam in lams if abs(lam.imag) <= REAL_AXIS_TOL * abs(lam)),
                     key=lambda lam: abs(f(lam.real)))[:missing]
    if 2 * len(upper) + len(on_axis) != needed:
        raise CountMismatchError(name, needed, 2 * len(upper) + len(on_axis))
    if on_axis:
        logger.info("%s: %d real zeros taken from the disk polynomial", name, len(on_axis))
    extra = merge_roots([RealRoot(s_of(lam.real)) for lam in on_axis], settings.MERGE_TOL * PI * n)
    return upper, extra


def resonances(potential, n_max=10, tol=None, backend='auto', recover=False):
    """Real and complex zeros of rho, labelled r_0^- and r_n^+- for n <= n_max.

    With ``recover`` rho is rebuilt pointwise from D+ and D- only.
    """
    f = evaluator(potential, 'rho_recovered' if recover else 'rho', backend)
    big_n = region_index(potential)
    main_z = SQRT2 * PI * (big_n + 0.5)
    name = f"rho |lam| < 4(pi({big_n}+1/2))^4"
    circle, counted = _counted(f, 0j, main_z ** 4, 'lambda', name)
    main_z = circle.radius ** 0.25
    real_roots = _real_scan(f, -main_z / SQRT2, main_z, 'rho', tol)
    pairs, complex_roots, regions = {}, [], []
    found_main = sum(r.multiplicity for r in real_roots)

    for n in range(1, max(big_n, n_max) + 1):
        sub_name = f"rho |z - (1+i){n}pi| < pi/4"
        disk, sub_count = _counted(f, (1 + 1j) * PI * n, PI / 4, 'z', sub_name)
        lo, hi = _disk_segment(n, disk.radius)
        if n <= big_n:
            local = [r for r in real_roots if lo < r.s < hi]
        else:
            local = _real_scan(f, lo, hi, 'rho', tol)
            real_roots.extend(local)
        real_count = sum(r.multiplicity for r in local)
        upper, extra = _complex_in_disk(f, n, disk.radius, sub_count - real_count, sub_name, tol)
        complex_roots.extend(upper)
        real_roots.extend(extra)
        local = local + extra
        real_count += sum(r.multiplicity for r in extra)
        if n <= big_n:
            found_main += 2 * len(upper) + sum(r.multiplicity for r in extra)
        else:
            regions.append(_check(sub_name, 2, sub_count, real_count + 2 * len(upper)))
        members = [lam_of(r.s) for r in local for _ in range(r.multiplicity)]
        members = sorted(members) + [u.conjugate() for u in upper] + upper
        if len(members) == 2:
            pairs[n] = (members[0], members[1])
    regions.insert(0, _check(name, 2 * big_n + 1, counted, found_main))
    (lams, mults) = _expand(real_roots)
    return ResonanceList(tuple(lams), tuple(mults), tuple(complex_roots), pairs, tuple(regions))


"""-------------------------------------------------------------------------"""


def classify_point(potential, lam, backend='auto'):
    """Spectral multiplicity 0, 2 or 4 at a real lambda."""
    pair = branches(trace_bundle(potential, float(lam), backend))
    if not pair.real_branches:
        return 0
    inside = sum(1 for d in (pair.delta1.real, pair.delta2.real) if -1 < d < 1)
    return 2 * inside


def _zero_labels(lam, zero_sets, tol):
    labels = []
    for label, values in zero_sets.items():
        if any(abs(lam - v) <= tol * max(1.0, abs(lam)) for v in values):
            labels.append(label)
    return labels


def _monotone(potential, lo, hi, backend, samples=16):
    """Sign-constancy of the derivative of every branch lying in (-1, 1)."""
    grid = np.linspace(lo, hi, samples + 2)[1:-1]
    h = 1e-7 * max(1.0, abs(hi - lo))
    signs = {}
    for lam in grid:
        mid = branches(trace_bundle(potential, lam, backend))
        left = branches(trace_bundle(potential, lam - h, backend))
        right = branches(trace_bundle(potential, lam + h, backend))
        for key in ('delta1', 'delta2'):
            value = getattr(mid, key).real
            if not mid.real_branches or not -1 < value < 1:
                continue
            slope = getattr(right, key).real - getattr(left, key).real
            signs.setdefault(key, set()).add(np.sign(slope))
    return all(len(s) == 1 for s in signs.values())


def _pieces(potential, a, b, backend, depth=0):
    """[lo, hi, multiplicity] runs covering (a, b).

    A piece between consecutive zeros has one class; when its quarter
    points disagree, two transitions shared a grid cell and the piece is
    bisected, at most REFINE_MAX_DEPTH times.
    """
    width = b - a
    classes = [classify_point(potential, a + q * width, backend) for q in (0.25, 0.5, 0.75)]
    if len(set(classes)) == 1:
        return [[a, b, classes[1]]]
    if depth >= settings.REFINE_MAX_DEPTH:
        raise RootEscapeError(f"unresolved transition in [{a!r}, {b!r}] after {depth} refinements",
                              lo=a, hi=b)
    logger.debug("refining [%.17g, %.17g]: classes %s", a, b, classes)
    mid = 0.5 * (a + b)
    return (_pieces(potential, a, mid, backend, depth + 1)
            + _pieces(potential, mid, b, backend, depth + 1))


def band_scan(potential, lam_lo, lam_hi, grid_n=None, tol=None, backend='auto'):
    """Bands (with multiplicity) and gaps of the real spectrum on [lam_lo, lam_hi]."""
    tol = tol or settings.ROOT_TOL
    s_lo, s_hi = s_of(lam_lo), s_of(lam_hi)
    per_unit = grid_n / max(s_hi - s_lo, 1e-12) if grid_n else None
    zero_sets, doubles = {}, set()
    for which, label in (('Dplus', 'periodic'), ('Dminus', 'antiperiodic'), ('rho', 'resonance')):
        f = evaluator(potential, which, backend)
        roots = _real_scan(f, s_lo, s_hi, which, tol, per_unit)
        zero_sets[label] = [lam_of(r.s) for r in roots]
        if label != 'resonance':
            doubles.update(lam_of(r.s) for r in roots if r.multiplicity >= 2)
    points = sorted({lam_lo, lam_hi, *[v for vs in zero_sets.values() for v in vs]})
    points = [p for i, p in enumerate(points) if i == 0 or p - points[i - 1] > tol * max(1.0, abs(p))]

    pieces = []
    for a, b in zip(points[:-1], points[1:]):
        pieces.extend(_pieces(potential, a, b, backend))
    # [lo, hi, multiplicity, pieces]; a branch may turn at a closed gap
    merged, closed = [], []
    for lo, hi, mult in pieces:
        if merged and merged[-1][2] == mult:
            if mult > 0 and merged[-1][1] in doubles:
                closed.append(merged[-1][1])
            merged[-1][1] = hi
            merged[-1][3].append((lo, hi))
        else:
            merged.append([lo, hi, mult, [(lo, hi)]])

    bands, gaps = [], []
    for lo, hi, mult, parts in merged:
        if mult:
            monotone = all(_monotone(potential, a, b, backend) for a, b in parts)
            bands.append(Band(lo, hi, mult, monotone))
            continue
        rho = trace_bundle(potential, 0.5 * (lo + hi), backend).rho.real
        labels = [_zero_labels(x, zero_sets, tol) for x in (lo, hi)]
        ends = []
        for found in labels:
            stable = [lab for lab in found if lab != 'resonance']
            ends.append(stable[0] if stable else (found[0] if found else None))
        gaps.append(Gap(lo, hi, 'resonance' if rho < 0 else 'stable', ends[0], ends[1]))
    logger.info("band scan [%g, %g]: %d bands, %d gaps", lam_lo, lam_hi, len(bands), len(gaps))
    return BandStructure(tuple(bands), tuple(gaps), tuple(closed))
