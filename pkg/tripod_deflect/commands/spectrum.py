# -*- encoding: utf-8 -*-
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.
#

from dataclasses import replace

import numpy as np

from tripod_deflect.command import Command, Result
from tripod_deflect.core import register_commands


class Spectrum(Command):
    """Susceptibilities against the probe detuning at a fixed point.

    Away from ``delta_probe = delta_control`` the probe and control beat at
    ``omega_pc`` and the first order systems are shifted accordingly.
    """
    name = 'spectrum'
    description = 'Probe susceptibility spectrum at one point of the cell'
    columns = ('delta_gamma', 're_chi_plus', 'im_chi_plus', 're_chi_minus',
               'im_chi_minus')

    def compute(self):
        point = self.point
        settings = point.spectrum
        rows = []
        for delta in np.linspace(settings.delta_min, settings.delta_max,
                                 settings.points):
            params = replace(point.atomic, delta_probe=float(delta))
            sample = point.model(params).sample(settings.x, 0.0, settings.z)
            rows.append((delta, sample.chi_plus.real, sample.chi_plus.imag,
                         sample.chi_minus.real, sample.chi_minus.imag))
        return Result(rows=rows)


register_commands(Spectrum)
