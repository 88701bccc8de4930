# -*- encoding: utf-8 -*-
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.
#

from tripod_deflect.command import Command, Result
from tripod_deflect.core import Mode, register_commands
from tripod_deflect.propagation import (deflection_angles,
                                        self_consistent_profile)


class Divergence(Command):
    """Deflection angles, angular divergence and transmissions along z.

    In fixed-line mode the index gradient is integrated on the line
    ``x = x0``. In self-consistent mode the angles are the slopes of the
    traced rays and transmissions follow the rays.
    """
    name = 'divergence'
    description = 'Angular divergence of the probe components along the cell'
    columns = ('z_cm', 'theta_plus_rad', 'theta_minus_rad', 'phi_rad',
               'T_plus', 'T_minus')
    mode = Mode.FIXED_LINE

    def compute(self):
        point = self.point
        field = point.field()
        if self.ray_mode is Mode.FIXED_LINE:
            profile = deflection_angles(point.x0, point.cell_length, field,
                                        point.steps, point.h_gradient)
        else:
            profile, _, _ = self_consistent_profile(
                point.x0, point.slope0, point.cell_length, field, point.steps,
                point.h_gradient, point.x_bound)
        field.model.stats()
        rows = zip(profile.z_grid, profile.theta_plus, profile.theta_minus,
                   profile.phi, profile.t_plus, profile.t_minus)
        metadata = {'phi_extremum_cm': float(profile.extremum())}
        return Result(rows=list(rows), metadata=metadata)


register_commands(Divergence)
