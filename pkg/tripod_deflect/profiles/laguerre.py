# -*- encoding: utf-8 -*-
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.
#

import math

import numpy as np

from tripod_deflect.beams import Profile
from tripod_deflect.core import register_profiles


class LaguerreGauss(Profile):
    """Laguerre-Gauss vortex of azimuthal index ``m`` and radial index 0.

    The envelope is normalised so that its magnitude equals ``amplitude`` on
    the ring of the waist plane, ``r = w0 sqrt(m/2)``.
    """
    name = 'laguerre'
    description = 'Laguerre-Gauss LG_m vortex of waist w0'

    @classmethod
    def ring(cls, beam):
        """Magnitude of the unnormalised profile on its ring at the waist."""
        return beam.m**(beam.m / 2) * math.exp(-beam.m / 2)

    @classmethod
    def envelope(cls, X, y, Z, beam):
        """Complex envelope with curvature and Gouy phases."""
        m = beam.m
        r2 = X**2 + y**2
        wz = beam.w0 * np.sqrt(1 + (Z / beam.z_r)**2)
        curvature = Z / (Z**2 + beam.z_r**2)
        gouy = np.arctan(Z / beam.z_r)
        magnitude = (beam.w0 / wz) * (2 * r2 / wz**2)**(m / 2) * np.exp(
            -r2 / wz**2)
        phase = (-beam.wavenumber * r2 * curvature / 2 +
                 m * np.arctan2(y, X) - (m + 1) * gouy)
        return beam.amplitude / cls.ring(beam) * magnitude * np.exp(1j * phase)

    @classmethod
    def width(cls, beam):
        return beam.w0

    @classmethod
    def offset(cls, beam):
        return beam.w0 * math.sqrt(beam.m / 2) / 2


register_profiles(LaguerreGauss)
