# -*- encoding: utf-8 -*-
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.
#
"""Paraxial propagation of the probe components through the cell.

The probe enters at ``z = 0`` with transverse offset ``x0`` and stays in the
plane ``y = 0``. In the paraxial limit a ray obeys ``X'' = dn/dx``.
"""

import logging
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

import numpy as np
from scipy.integrate import cumulative_trapezoid, trapezoid

from tripod_deflect.core import Branch
from tripod_deflect.errors import RayEscaped

logger = logging.getLogger(__name__)

STEPS = 2000
GAIN_TOLERANCE = 1e-6


class IndexField(ABC):
    """Optical properties of the medium seen by the probe.

    :param float wavenumber: Probe wavenumber in 1/cm.
    :param float step: Default finite difference step in cm.

    """
    wavenumber = 1.0
    step = 1e-4

    @abstractmethod
    def sample(self, x, y, z):
        """Return the :class:`SusceptibilitySample` at ``(x, y, z)``."""

    def index(self, x, z, branch, y=0.0):
        """Refractive index of a component."""
        return self.sample(x, y, z).index(branch)

    def absorption(self, x, z, branch):
        """Absorptive part of the susceptibility of a component."""
        return self.sample(x, 0.0, z).kappa(branch)


class ResponseField(IndexField):
    """Index field of the tripod vapor under a control beam.

    :param ResponseModel model: Susceptibility model of the cell.
    :param float step: Finite difference step, default a two hundredth of
        the smallest beam width parameter.

    """

    def __init__(self, model, step=None):
        self.model = model
        self.wavenumber = 2 * math.pi / model.params.wavelength
        if step is None:
            step = min(model.beam.sigma, model.beam.w0) / 200
        self.step = step

    def sample(self, x, y, z):
        return self.model.sample(x, y, z)


@dataclass
class DeflectionProfile:
    """Deflection angles and transmissions along the cell."""
    z_grid: np.ndarray
    theta_plus: np.ndarray
    theta_minus: np.ndarray
    phi: np.ndarray
    t_plus: np.ndarray
    t_minus: np.ndarray

    @classmethod
    def build(cls, z_grid, theta_plus, theta_minus, t_plus, t_minus):
        """Build a profile, filling the angular divergence."""
        return cls(z_grid, theta_plus, theta_minus, theta_plus - theta_minus,
                   t_plus, t_minus)

    def extremum(self):
        """Position of the largest angular divergence magnitude."""
        return self.z_grid[np.argmax(np.abs(self.phi))]


@dataclass
class RayPath:
    """Transverse position and slope of one component along the cell."""
    z: np.ndarray
    x: np.ndarray
    slope: np.ndarray


def index_gradient(x, z, branch, h, field, axis='x'):
    """Central difference of the refractive index, in 1/cm.

    :param str axis: ``x`` in the plane of incidence, or ``y`` across it.
    """
    if not h > 0:
        raise ValueError('finite difference step must be positive: %r' % h)
    if axis == 'y':
        upper = field.index(x, z, branch, y=h)
        lower = field.index(x, z, branch, y=-h)
    else:
        upper = field.index(x + h, z, branch)
        lower = field.index(x - h, z, branch)
    return (upper - lower) / (2 * h)


def _grid(length, steps):
    if not length > 0:
        raise ValueError('cell length must be positive: %r' % length)
    if steps < 2:
        raise ValueError('at least two steps are required: %r' % steps)
    return np.linspace(0.0, length, steps + 1)


def _flag_gain(transmission, branch):
    """Report probe gain.

    Below theta_c = pi/4 the control pumps the atoms through its sigma and
    pi components and one probe component is amplified by the Raman
    transfer, so a transmission above 1 is physical there.
    """
    peak = float(np.max(transmission))
    if peak > 1 + GAIN_TOLERANCE:
        logger.warning('Transmission of the %s component reaches %.9f > 1, '
                       'Raman gain from the control polarization components.',
                       Branch(branch).value, peak)


def _transmissions(kappa, z_grid, field, branch):
    transmission = np.exp(-field.wavenumber *
                          cumulative_trapezoid(kappa, z_grid, initial=0))
    _flag_gain(transmission, branch)
    return transmission


def deflection_angles(x0, length, field, steps=STEPS, h=None):
    """Deflection angles on the undeflected line ``x = x0``.

    The index gradient is integrated along ``z`` with the trapezoid rule,
    transmissions are filled on the same grid.

    :param float x0: Probe transverse offset in cm.
    :param float length: Cell length in cm.
    :param IndexField field: Medium seen by the probe.
    :param int steps: Number of intervals along the cell.
    :param float h: Finite difference step, default ``field.step``.
    :return DeflectionProfile: Angles, divergence and transmissions.
    """
    h = field.step if h is None else h
    z_grid = _grid(length, steps)
    angles, transmissions = [], []
    for branch in Branch:
        gradient = np.array([index_gradient(x0, z, branch, h, field)
                             for z in z_grid])
        kappa = np.array([field.absorption(x0, z, branch) for z in z_grid])
        angles.append(cumulative_trapezoid(gradient, z_grid, initial=0))
        transmissions.append(_transmissions(kappa, z_grid, field, branch))
    return DeflectionProfile.build(z_grid, angles[0], angles[1],
                                   transmissions[0], transmissions[1])


def transmission(x0, length, branch, field, steps=STEPS):
    """Transmission of one component through the whole cell."""
    z_grid = _grid(length, steps)
    kappa = [field.absorption(x0, z, branch) for z in z_grid]
    value = math.exp(-field.wavenumber * trapezoid(kappa, z_grid))
    _flag_gain([value], branch)
    return value


def trace_ray(x0, slope0, length, branch, field, steps=STEPS, h=None,
              bound=math.inf):
    """Trace a ray through the cell, the gradient following the ray.

    Integrates ``X'' = dn/dx (X, z)`` with the classical fixed-step RK4
    scheme on ``(X, X')``.

    :param float bound: Largest allowed ``|X|`` in cm.
    :raises RayEscaped: If the ray leaves the transverse bounds.
    """
    h = field.step if h is None else h
    z_grid = _grid(length, steps)
    dz = z_grid[1] - z_grid[0]
    xs = np.empty_like(z_grid)
    slopes = np.empty_like(z_grid)
    x, slope = float(x0), float(slope0)
    xs[0], slopes[0] = x, slope

    def force(position, z):
        return index_gradient(position, z, branch, h, field)

    for j in range(steps):
        z = z_grid[j]
        k1x, k1s = slope, force(x, z)
        k2x = slope + dz / 2 * k1s
        k2s = force(x + dz / 2 * k1x, z + dz / 2)
        k3x = slope + dz / 2 * k2s
        k3s = force(x + dz / 2 * k2x, z + dz / 2)
        k4x = slope + dz * k3s
        k4s = force(x + dz * k3x, z + dz)
        x += dz / 6 * (k1x + 2 * k2x + 2 * k3x + k4x)
        slope += dz / 6 * (k1s + 2 * k2s + 2 * k3s + k4s)
        if not abs(x) <= bound:
            raise RayEscaped('%s ray left |x| <= %g cm at z = %g cm.' %
                             (Branch(branch).value, bound, z + dz))
        xs[j + 1], slopes[j + 1] = x, slope
    return RayPath(z_grid, xs, slopes)


def path_transmission(path, branch, field):
    """Transmission of one component along a traced ray."""
    kappa = np.array([field.absorption(x, z, branch)
                      for x, z in zip(path.x, path.z)])
    return _transmissions(kappa, path.z, field, branch)


def fixed_line_ray(x0, slope0, z_grid, theta):
    """Ray position integrated from fixed-line deflection angles."""
    x = x0 + slope0 * z_grid + cumulative_trapezoid(theta, z_grid, initial=0)
    return RayPath(z_grid, x, slope0 + theta)


def self_consistent_profile(x0, slope0, length, field, steps=STEPS, h=None,
                            bound=math.inf):
    """Deflection profile from traced rays of both components.

    :return: The profile and the two ray paths.
    """
    paths = [trace_ray(x0, slope0, length, branch, field, steps, h, bound)
             for branch in Branch]
    transmissions = [path_transmission(path, branch, field)
                     for path, branch in zip(paths, Branch)]
    profile = DeflectionProfile.build(
        paths[0].z, paths[0].slope - slope0, paths[1].slope - slope0,
        transmissions[0], transmissions[1])
    return profile, paths[0], paths[1]


def find_foci(path_plus, path_minus):
    """Positions where the two component rays cross.

    Sign changes of ``x_plus - x_minus`` are refined by linear
    interpolation. Exact zeros count once, when the sign on both sides
    differs.

    :return list: Focal positions in cm, increasing.
    """
    if not np.array_equal(path_plus.z, path_minus.z):
        raise ValueError('rays must share their z grid.')
    z = path_plus.z
    delta = np.asarray(path_plus.x) - np.asarray(path_minus.x)
    foci = []
    previous = None
    for j in range(len(z)):
        if delta[j] == 0 or z[j] <= 0:
            continue
        if previous is not None and np.sign(delta[j]) != np.sign(
                delta[previous]):
            if previous == j - 1:
                ratio = delta[previous] / (delta[previous] - delta[j])
                foci.append(z[previous] + ratio * (z[j] - z[previous]))
            else:
                foci.append(z[previous + 1])
        previous = j
    return [float(focus) for focus in foci]
