"""Floquet spectral toolkit for y'''' + V y = lam y with 1-periodic V."""

from quartic.errors import FloquetError
from quartic.potential import PeriodicPotential, delta_comb, from_cosines, from_spec, sampled, trig, zero

__all__ = ['FloquetError', 'PeriodicPotential', 'delta_comb', 'from_cosines',
           'from_spec', 'sampled', 'trig', 'zero']
