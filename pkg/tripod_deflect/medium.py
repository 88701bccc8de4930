# -*- encoding: utf-8 -*-
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.
#
"""Physical parameters of the tripod system.

Levels are numbered as in the model: ``0``, ``1`` and ``2`` are the ground
sublevels, ``3`` is the common excited level. Every rate and detuning is an
angular frequency expressed in units of ``gamma``.
"""

import math
from dataclasses import dataclass, fields

import numpy as np
from scipy import constants

from tripod_deflect.errors import ValidationError

# Common rate of the potassium D1 line: A / 12 with A = 2pi x 6.079 MHz.
GAMMA = 2 * math.pi * 6.079e6 / 12

# Angular frequency per gauss of a unit g-factor and magnetic number.
BOHR_ANGULAR = (constants.physical_constants['Bohr magneton'][0] * 1e-4 /
                constants.hbar)

EXCITED = 3
GROUNDS = (1, 2, 0)


@dataclass(frozen=True)
class AtomicParams:
    """One physical configuration of the tripod vapor.

    :param float gamma: Common spontaneous rate in rad/s, internal unit.
    :param float gamma13: Decay rate from 3 to 1.
    :param float gamma23: Decay rate from 3 to 2.
    :param float gamma03: Decay rate from 3 to 0.
    :param float gamma_coll: Collisional dephasing rate.
    :param float delta_probe: Probe detuning.
    :param float delta_control: Control detuning.
    :param float delta_zeeman: Zeeman splitting of the ground sublevels.
    :param float number_density: Atomic density in cm^-3.
    :param float wavelength: Probe and control wavelength in cm.
    :param float rabi_peak: Peak control Rabi scale.
    :param float dipole_ratio: Ratio of the 3-0 dipole to the 3-1, 3-2 one.

    """
    gamma: float = GAMMA
    gamma13: float = 1.0
    gamma23: float = 1.0
    gamma03: float = 1.0
    gamma_coll: float = 0.0
    delta_probe: float = 0.0
    delta_control: float = 0.0
    delta_zeeman: float = 0.01
    number_density: float = 5e12
    wavelength: float = 769.9e-7
    rabi_peak: float = 2.0
    dipole_ratio: float = 1.0

    def __post_init__(self):
        for field in fields(self):
            value = getattr(self, field.name)
            if not math.isfinite(value):
                raise ValidationError('%s is finite' % field.name,
                                      repr(value))
        for name in ('gamma13', 'gamma23', 'gamma03', 'gamma_coll'):
            if getattr(self, name) < 0:
                raise ValidationError('decay rates >= 0',
                                      '%s=%r' % (name, getattr(self, name)))
        positive = ('gamma', 'number_density', 'wavelength')
        for name in positive:
            if getattr(self, name) <= 0:
                raise ValidationError('%s > 0' % name,
                                      repr(getattr(self, name)))
        if self.dipole_ratio < 0:
            raise ValidationError('dipole_ratio >= 0', repr(self.dipole_ratio))

    @property
    def omega_pc(self):
        """Probe to control frequency difference."""
        return self.delta_probe - self.delta_control

    def decay(self, k, i):
        """Spontaneous rate from level ``i`` to level ``k``."""
        if i != EXCITED:
            return 0.0
        return {1: self.gamma13, 2: self.gamma23, 0: self.gamma03}.get(k, 0.)

    def dephasing(self, i, j):
        """Dephasing rate of the coherence between levels ``i`` and ``j``."""
        total = 0.0
        for k in range(4):
            total += self.decay(k, i) + self.decay(k, j)
        return total / 2 + self.gamma_coll

    def energies(self):
        """Level energies in the frame where the probe is resonant at zero."""
        return np.array([0.0, self.delta_zeeman, -self.delta_zeeman,
                         -self.delta_control])


@dataclass(frozen=True)
class RabiTriple:
    """Control Rabi frequencies on the 3-0, 3-1 and 3-2 transitions."""
    g0: complex
    g1: complex
    g2: complex

    @property
    def magnitude(self):
        """Largest coupling magnitude."""
        return max(abs(self.g0), abs(self.g1), abs(self.g2))

    def scaled(self, factor):
        """Return the triple multiplied by ``factor``."""
        return RabiTriple(self.g0 * factor, self.g1 * factor,
                          self.g2 * factor)


def rabi_from_envelope(envelope, theta_c, params):
    """Project the obliquely incident control field onto the transitions.

    The in-plane part of the control polarization drives the 3-1 and 3-2
    transitions through its circular projections, the normal part drives
    the 3-0 transition.

    :param complex envelope: Control envelope, of magnitude 1 at the beam's
        peak.
    :param float theta_c: Incidence angle, in radians.
    :param AtomicParams params: Configuration holding the Rabi scale.
    :return RabiTriple: Rabi frequencies in units of gamma.
    """
    field = params.rabi_peak * complex(envelope)
    circular = field * math.cos(theta_c) / math.sqrt(2)
    linear = field * params.dipole_ratio * math.sin(theta_c)
    return RabiTriple(g0=linear, g1=circular, g2=circular)


def zeeman_splitting(field, g_factor, m, gamma=GAMMA):
    """Zeeman shift of a magnetic sublevel, in units of ``gamma``.

    :param float field: Magnetic field in gauss.
    :param float g_factor: Lande factor of the level.
    :param int m: Magnetic quantum number.
    :param float gamma: Frequency unit in rad/s.
    """
    return BOHR_ANGULAR * field * m * g_factor / gamma
