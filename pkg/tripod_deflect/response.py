# -*- encoding: utf-8 -*-
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.
#
"""Probe susceptibilities of the circular components."""

import logging
import math
import threading
from dataclasses import dataclass

from tripod_deflect.beams import envelope
from tripod_deflect.core import Branch
from tripod_deflect.medium import rabi_from_envelope
from tripod_deflect.steadystate import INDEX, steady_state

logger = logging.getLogger(__name__)

FIELD_FLOOR = 0.0
WEAK_FIELD = 1e-4
CACHE_DIGITS = 6


@dataclass(frozen=True)
class SusceptibilitySample:
    """Susceptibilities and refractive indices of both probe components."""
    chi_plus: complex
    chi_minus: complex
    n_plus: float
    n_minus: float
    kappa_plus: float
    kappa_minus: float

    @classmethod
    def from_chi(cls, chi_plus, chi_minus):
        """Build a sample, deriving indices and absorptions."""
        chi_plus, chi_minus = complex(chi_plus), complex(chi_minus)
        return cls(chi_plus, chi_minus,
                   1 + 2 * math.pi * chi_plus.real,
                   1 + 2 * math.pi * chi_minus.real,
                   chi_plus.imag, chi_minus.imag)

    def chi(self, branch):
        """Susceptibility of one component."""
        return self.chi_plus if Branch(branch) is Branch.PLUS else \
            self.chi_minus

    def index(self, branch):
        """Refractive index of one component."""
        return self.n_plus if Branch(branch) is Branch.PLUS else self.n_minus

    def kappa(self, branch):
        """Absorptive part of one component."""
        return self.kappa_plus if Branch(branch) is Branch.PLUS else \
            self.kappa_minus


def prefactor(params):
    """Dimensionless scale from a coherence in units of ``1/gamma`` to chi.

    It is ``3 N c^3 gamma / (2 omega_p^3)`` with ``omega_p = 2 pi c / lambda``.
    """
    return 3 * params.number_density * params.wavelength**3 / (16 *
                                                               math.pi**3)


def susceptibility(solution, params, scale=None):
    """Susceptibilities from a solved steady state.

    :param SteadyStateSolution solution: Steady state at one point.
    :param AtomicParams params: Atomic configuration.
    :param float scale: Prefactor override, default :func:`prefactor`.
    """
    if scale is None:
        scale = prefactor(params)
    return SusceptibilitySample.from_chi(
        scale * solution.x_plus[INDEX[(3, 1)]],
        scale * solution.x_minus[INDEX[(3, 2)]])


def bare_response(params, scale=None):
    """Response of an undriven vapor, 1/3 of the atoms in each sublevel.

    Each component sees a Lorentzian two-level line of width the optical
    dephasing of its transition.
    """
    if scale is None:
        scale = prefactor(params)
    detuning = params.omega_pc + params.delta_control
    p31 = 1j * (detuning + params.delta_zeeman) - params.dephasing(3, 1)
    p32 = 1j * (detuning - params.delta_zeeman) - params.dephasing(3, 2)
    weight = -1j / (3 * math.sqrt(2))
    return SusceptibilitySample.from_chi(scale * weight / p31,
                                         scale * weight / p32)


class ResponseModel:
    """Susceptibility over the cell for one beam and one configuration.

    The response only depends on the magnitude of the control envelope, a
    common phase of the three Rabi frequencies being a gauge of the ground
    sublevels. Solves are therefore memoized on the envelope magnitude,
    rounded to ``cache_digits`` significant digits, and always performed
    at the rounded value.

    :param BeamSpec beam: Control beam.
    :param AtomicParams params: Atomic configuration.
    :param float scale: Prefactor override.
    :param float field_floor: At or below this coupling, the bare response
        is used. The default only switches on exactly vanishing fields, a
        positive floor introduces the step reported by :meth:`floor_step`.
    :param float weak_field: Couplings below this value are solved at this
        magnitude, with the same ratios.
    :param int cache_digits: Significant digits of the cache key, ``None``
        disables the cache and the rounding.

    """

    def __init__(self, beam, params, scale=None, field_floor=FIELD_FLOOR,
                 weak_field=WEAK_FIELD, cache_digits=CACHE_DIGITS):
        self.beam = beam
        self.params = params
        self.scale = prefactor(params) if scale is None else scale
        self.field_floor = field_floor
        self.weak_field = max(weak_field, field_floor)
        self.digits = cache_digits
        self.hits = 0
        self.misses = 0
        self.fallbacks = 0
        self._cache = {}
        self._lock = threading.Lock()

    def _key(self, magnitude):
        if self.digits is None:
            return magnitude
        return float('%.*e' % (self.digits - 1, magnitude))

    def at_magnitude(self, magnitude):
        """Sample for a control envelope of magnitude ``magnitude``."""
        key = self._key(magnitude)
        if self.digits is None:
            return self._solve(key)
        with self._lock:
            sample = self._cache.get(key)
            if sample is not None:
                self.hits += 1
                return sample
        sample = self._solve(key)
        with self._lock:
            self.misses += 1
            self._cache[key] = sample
        return sample

    def _solve(self, magnitude):
        rabi = rabi_from_envelope(magnitude, self.beam.theta_c, self.params)
        strength = rabi.magnitude
        if strength <= self.field_floor:
            logger.debug('Vanishing control field %.3e, bare response.',
                         strength)
            with self._lock:
                self.fallbacks += 1
            return bare_response(self.params, self.scale)
        if strength < self.weak_field:
            logger.debug('Weak control field %.3e solved at %.3e.', strength,
                         self.weak_field)
            rabi = rabi.scaled(self.weak_field / strength)
        return susceptibility(steady_state(self.params, rabi), self.params,
                              self.scale)

    def sample(self, x, y, z):
        """Sample at cell coordinates ``(x, y, z)``, in cm."""
        return self.at_magnitude(abs(envelope(x, y, z, self.beam)))

    def floor_step(self):
        """Jump of the susceptibilities across the field floor.

        Bare response minus the weak field limit that couplings just above
        the floor are solved at. ``None`` without a control field.

        :return: ``(step_plus, step_minus)`` complex differences.
        """
        rabi = rabi_from_envelope(1.0, self.beam.theta_c, self.params)
        if rabi.magnitude == 0:
            return None
        rabi = rabi.scaled(self.weak_field / rabi.magnitude)
        limit = susceptibility(steady_state(self.params, rabi), self.params,
                               self.scale)
        bare = bare_response(self.params, self.scale)
        return (bare.chi_plus - limit.chi_plus,
                bare.chi_minus - limit.chi_minus)

    def stats(self):
        """Log the cache efficiency and the bare response fallbacks."""
        total = self.hits + self.misses
        if total:
            logger.debug('Response cache: %d entries, %d/%d hits.',
                         len(self._cache), self.hits, total)
        if self.fallbacks and self.field_floor > 0:
            step = self.floor_step()
            if step is not None:
                logger.warning('Bare response used on %d field magnitudes '
                               'below %.3e, susceptibility step %.3e / '
                               '%.3e.', self.fallbacks, self.field_floor,
                               abs(step[0]), abs(step[1]))


def susceptibility_at(x, y, z, beam, params, **settings):
    """Susceptibilities at one point of the cell.

    :param settings: Optional :class:`ResponseModel` settings.
    """
    return ResponseModel(beam, params, **settings).sample(x, y, z)
