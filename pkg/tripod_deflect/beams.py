# -*- encoding: utf-8 -*-
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.
#
"""Obliquely incident control beam.

The control beam propagates along ``Z`` in the plane of incidence, tilted by
``theta_c`` from the cell axis ``z``. Profiles are plugins registered in
:mod:`tripod_deflect.profiles`.
"""

import math
from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import Optional

import numpy as np

from tripod_deflect.core import get_profiles
from tripod_deflect.errors import ValidationError, WrongFamily


@dataclass(frozen=True)
class BeamSpec:
    """Control beam geometry.

    :param str family: Profile name, ``gaussian`` or ``laguerre``.
    :param int m: Azimuthal index of a Laguerre-Gauss beam.
    :param float theta_c: Incidence angle in radians.
    :param float w0: Waist in cm.
    :param float sigma: Gaussian transverse width in cm.
    :param float z_r: Rayleigh length in cm, ``pi w0^2 / wavelength`` when
        not given.
    :param float amplitude: Peak envelope magnitude.
    :param float wavelength: Control wavelength in cm.

    """
    family: str = 'gaussian'
    m: int = 0
    theta_c: float = math.pi / 4
    w0: float = 0.012
    sigma: float = math.sqrt(2) / 10
    z_r: Optional[float] = None
    amplitude: float = 1.0
    wavelength: float = 769.9e-7

    def __post_init__(self):
        names = {cls.name for cls in get_profiles()}
        if self.family not in names:
            raise ValidationError('beam family in {%s}' %
                                  ', '.join(sorted(names)), self.family)
        if int(self.m) != self.m or self.m < 0:
            raise ValidationError('m is a non-negative integer', repr(self.m))
        if not 0 <= self.theta_c < math.pi / 2:
            raise ValidationError('theta_c in [0, pi/2)', repr(self.theta_c))
        for name in ('w0', 'sigma', 'wavelength'):
            if not getattr(self, name) > 0:
                raise ValidationError('%s > 0' % name,
                                      repr(getattr(self, name)))
        if self.z_r is None:
            object.__setattr__(self, 'z_r', rayleigh_length(self.w0,
                                                            self.wavelength))
        elif not self.z_r > 0:
            raise ValidationError('z_r > 0', repr(self.z_r))
        object.__setattr__(self, 'm', int(self.m))

    @property
    def profile(self):
        """Profile class of the beam family."""
        for cls in get_profiles():
            if cls.name == self.family:
                return cls
        raise WrongFamily('unknown control beam family: %s' % self.family)

    @property
    def wavenumber(self):
        """Control wavenumber in 1/cm."""
        return 2 * math.pi / self.wavelength


class Profile(ABC):
    """Interface for the control beam profile families.

    Envelopes are evaluated in the tilted frame and accept numpy arrays.

    :param str name: Family name used in the configuration files.
    :param str description: One line description of the family.

    """
    name = ''
    description = ''

    @classmethod
    @abstractmethod
    def envelope(cls, X, y, Z, beam):
        """Complex envelope at tilted coordinates ``(X, y, Z)``."""

    @classmethod
    @abstractmethod
    def width(cls, beam):
        """Smallest transverse feature of the beam, in cm."""

    @classmethod
    @abstractmethod
    def offset(cls, beam):
        """Default transverse probe offset, on a single-signed slope."""

    @classmethod
    def fwhm(cls, beam):
        """Full width at half maximum of the profile."""
        raise WrongFamily('FWHM is only defined for the Gaussian family, '
                          'not for %s.' % cls.name)


def rayleigh_length(w0, wavelength):
    """Rayleigh length of a waist ``w0`` at ``wavelength``."""
    return math.pi * w0**2 / wavelength


def tilted_coordinates(x, z, theta_c):
    """Coordinates in the frame of the tilted control beam.

    :return: ``(X, Z)``, transverse and longitudinal to the control beam.
    """
    cos, sin = np.cos(theta_c), np.sin(theta_c)
    return x * cos - z * sin, x * sin + z * cos


def envelope(x, y, z, beam):
    """Complex control envelope at cell coordinates ``(x, y, z)``."""
    X, Z = tilted_coordinates(x, z, beam.theta_c)
    return beam.profile.envelope(X, y, Z, beam)


def fwhm(beam):
    """Full width at half maximum of a Gaussian control beam.

    :raises WrongFamily: For any other family.
    """
    return beam.profile.fwhm(beam)
