# -*- encoding: utf-8 -*-
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.
#

import numpy as np

from tripod_deflect.command import Command, Result
from tripod_deflect.core import register_commands


class ChiMap(Command):
    """Susceptibility map over the plane of incidence ``y = 0``.

    Rows run over ``x`` first, then ``z``.
    """
    name = 'chimap'
    description = 'Susceptibility map of both components in the y=0 plane'
    columns = ('x_cm', 'z_cm', 're_chi_plus', 'im_chi_plus', 're_chi_minus',
               'im_chi_minus')

    def compute(self):
        point = self.point
        model = point.model()
        xs = np.linspace(point.chimap.x_min, point.chimap.x_max,
                         point.chimap.nx)
        zs = np.linspace(0.0, point.cell_length, point.chimap.nz)
        rows = []
        for z in zs:
            for x in xs:
                sample = model.sample(x, 0.0, z)
                rows.append((x, z, sample.chi_plus.real, sample.chi_plus.imag,
                             sample.chi_minus.real, sample.chi_minus.imag))
        model.stats()
        return Result(rows=rows)


register_commands(ChiMap)
