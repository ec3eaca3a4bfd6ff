"""Composite Gauss-Legendre quadrature with panel doubling."""

import functools
import logging

import numpy as np
from numpy.polynomial import legendre

from quartic import settings

logger = logging.getLogger(__name__)


@functools.lru_cache(maxsize=32)
def _reference(q):
    x, w = legendre.leggauss(q)
    x.flags.writeable = False
    w.flags.writeable = False
    return x, w


def composite_nodes(a, b, panels, q=None):
    """Nodes and weights of ``panels`` equal Gauss-Legendre panels on [a, b]."""
    q = q or settings.QUAD_NODES
    x, w = _reference(q)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def integrate(f, a, b, tol=None, panels=1, q=None):
    """Integrate the vectorised callable ``f`` over [a, b].

    The panel count doubles until two successive estimates differ by
    less than ``tol`` (absolute, or relative to the estimate when it is
    larger than one).
    """
    tol = tol or settings.QUAD_TOL
    if a == b:
        return 0.0
    nodes, weights = composite_nodes(a, b, panels, q)
    previous = np.dot(weights, f(nodes))
    while panels < settings.QUAD_MAX_PANELS:
        panels *= 2
        nodes, weights = composite_nodes(a, b, panels, q)
        current = np.dot(weights, f(nodes))
        if abs(current - previous) <= tol * max(1.0, abs(current)):
            return current
        previous = current
    logger.warning("quadrature on [%g, %g] stopped at %d panels", a, b, panels)
    return previous


def local_integration_matrix(q):
    """Matrix Q with Q[i, j] = integral over [-1, x_i] of the j-th Lagrange basis.

    Used by the Picard iterates, where an indefinite integral is needed
    at every node of a panel.
    """
    x, _ = _reference(q)
    # Lagrange basis in Legendre coefficients: columns of inv(vander)
    vander = legendre.legvander(x, q - 1)
    coeffs = np.linalg.inv(vander)
    antider = legendre.legint(coeffs, lbnd=-1, axis=0)
    return np.stack([legendre.legval(xi, antider) for xi in x])
