# -*- encoding: utf-8 -*-
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.
#

import math

import numpy as np

from tripod_deflect.beams import Profile
from tripod_deflect.core import register_profiles


class Gaussian(Profile):
    """Gaussian control beam without diffraction along the cell.

    The envelope is ``amplitude * exp(-(X^2 + y^2) / sigma^2)``.
    """
    name = 'gaussian'
    description = 'Gaussian profile of width sigma'

    @classmethod
    def envelope(cls, X, y, Z, beam):
        """Real envelope, independent of ``Z``."""
        return beam.amplitude * np.exp(-(X**2 + y**2) / beam.sigma**2) + 0j

    @classmethod
    def width(cls, beam):
        return beam.sigma

    @classmethod
    def offset(cls, beam):
        return beam.sigma / 2

    @classmethod
    def fwhm(cls, beam):
        return 2 * math.sqrt(2 * math.log(2)) * beam.sigma


register_profiles(Gaussian)
