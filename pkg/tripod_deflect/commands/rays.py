# -*- encoding: utf-8 -*-
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.
#

from tripod_deflect.command import Command, Result
from tripod_deflect.core import Branch, Mode, register_commands
from tripod_deflect.propagation import (deflection_angles, find_foci,
                                        fixed_line_ray, trace_ray)


class Rays(Command):
    """Ray trajectories of both probe components and their crossings."""
    name = 'rays'
    description = 'Probe ray trajectories and lens foci'
    columns = ('z_cm', 'x_plus_cm', 'x_minus_cm')
    mode = Mode.SELF_CONSISTENT

    def compute(self):
        point = self.point
        field = point.field()
        if self.ray_mode is Mode.SELF_CONSISTENT:
            paths = [
                trace_ray(point.x0, point.slope0, point.cell_length, branch,
                          field, point.steps, point.h_gradient, point.x_bound)
                for branch in Branch
            ]
        else:
            profile = deflection_angles(point.x0, point.cell_length, field,
                                        point.steps, point.h_gradient)
            paths = [
                fixed_line_ray(point.x0, point.slope0, profile.z_grid, theta)
                for theta in (profile.theta_plus, profile.theta_minus)
            ]
        field.model.stats()
        foci = find_foci(*paths)
        rows = zip(paths[0].z, paths[0].x, paths[1].x)
        return Result(rows=list(rows), attachments={'foci': foci},
                      metadata={'foci_cm': foci})


register_commands(Rays)
