# -*- encoding: utf-8 -*-
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.
#
"""Steady-state density matrix of the tripod atom.

The zeroth order (control only) and the first order (linear in the probe)
density-matrix elements solve 15 x 15 complex systems ``A X = B``, the
excited population being eliminated with the unit trace. A direct time
integration of the master equation serves as an independent oracle.

Unknowns are ordered as::

    rho11 rho22 rho00 rho31 rho13 rho32 rho23 rho30 rho03
    rho01 rho10 rho20 rho02 rho21 rho12

"""

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy.linalg import lapack, lstsq

from tripod_deflect.core import Branch
from tripod_deflect.errors import (NonConvergence, SingularSystem,
                                   ValidationError)
from tripod_deflect.medium import EXCITED, GROUNDS

logger = logging.getLogger(__name__)

LAYOUT = ((1, 1), (2, 2), (0, 0), (3, 1), (1, 3), (3, 2), (2, 3), (3, 0),
          (0, 3), (0, 1), (1, 0), (2, 0), (0, 2), (2, 1), (1, 2))
INDEX = {pair: k for k, pair in enumerate(LAYOUT)}
SIZE = len(LAYOUT)
PAIRS = tuple((INDEX[(i, j)], INDEX[(j, i)]) for i, j in LAYOUT[3::2])

PIVOT_TOLERANCE = 1e-12
RESIDUAL_TOLERANCE = 1e-10
STEADY_TOLERANCE = 1e-12
SQRT2 = math.sqrt(2)


@dataclass(frozen=True)
class LinearSystem:
    """Dense complex system ``matrix @ x = rhs``."""
    matrix: np.ndarray
    rhs: np.ndarray


@dataclass(frozen=True)
class SteadyStateSolution:
    """Zeroth and first order steady-state vectors at one point."""
    x0: np.ndarray
    x_plus: np.ndarray
    x_minus: np.ndarray

    @property
    def rho33(self):
        """Excited population, from the unit trace."""
        return 1 - self.x0[:3].real.sum()

    def element(self, i, j, order=None):
        """Return the density-matrix element ``rho_ij`` of a given order.

        :param order: ``None`` for the zeroth order, or a :class:`Branch`
            for the first order coefficient of that probe component.
        """
        vector = {None: self.x0, Branch.PLUS: self.x_plus,
                  Branch.MINUS: self.x_minus}[order]
        if (i, j) == (EXCITED, EXCITED):
            if order is None:
                return complex(self.rho33)
            return -vector[:3].sum()
        return vector[INDEX[(i, j)]]

    def density(self):
        """Zeroth order density matrix as a 4 x 4 array."""
        return _density(self.x0)

    def violations(self, tol=RESIDUAL_TOLERANCE):
        """List the broken zeroth order invariants, empty when physical."""
        broken = []
        populations = self.x0[:3]
        if np.any(np.abs(populations.imag) >= tol):
            broken.append('populations are real')
        values = np.append(populations.real, self.rho33)
        if np.any(values < -tol) or np.any(values > 1 + tol):
            broken.append('populations lie in [0, 1]')
        for direct, conjugate in PAIRS:
            if abs(self.x0[direct] - np.conj(self.x0[conjugate])) >= tol:
                i, j = LAYOUT[direct]
                broken.append('rho%d%d is conj(rho%d%d)' % (i, j, j, i))
        return broken


def _couplings(rabi):
    """Shorthand ``-iG`` of the three control couplings."""
    return -1j * rabi.g1, -1j * rabi.g2, -1j * rabi.g0


def _zeroth_matrix(params, rabi):
    """Assemble the zeroth order matrix."""
    t1, t2, f0 = _couplings(rabi)
    c1, c2, c0 = np.conj(t1), np.conj(t2), np.conj(f0)
    matrix = np.zeros((SIZE, SIZE), dtype=complex)

    # Populations
    matrix[0, :3] = -params.gamma13
    matrix[0, 3], matrix[0, 4] = c1, t1
    matrix[1, :3] = -params.gamma23
    matrix[1, 5], matrix[1, 6] = c2, t2
    matrix[2, :3] = -params.gamma03
    matrix[2, 7], matrix[2, 8] = c0, f0

    # Optical coherences
    matrix[3, :3] = -2 * t1, -t1, -t1
    matrix[3, 9], matrix[3, 13] = -f0, -t2
    matrix[4, :3] = -2 * c1, -c1, -c1
    matrix[4, 10], matrix[4, 14] = -c0, -c2
    matrix[5, :3] = -t2, -2 * t2, -t2
    matrix[5, 12], matrix[5, 14] = -f0, -t1
    matrix[6, :3] = -c2, -2 * c2, -c2
    matrix[6, 11], matrix[6, 13] = -c0, -c1
    matrix[7, :3] = -f0, -f0, -2 * f0
    matrix[7, 10], matrix[7, 11] = -t1, -t2
    matrix[8, :3] = -c0, -c0, -2 * c0
    matrix[8, 9], matrix[8, 12] = -c1, -c2

    # Ground coherences
    matrix[9, 3], matrix[9, 8] = c0, t1
    matrix[10, 4], matrix[10, 7] = f0, c1
    matrix[11, 6], matrix[11, 7] = f0, c2
    matrix[12, 5], matrix[12, 8] = c0, t2
    matrix[13, 3], matrix[13, 6] = c2, t1
    matrix[14, 4], matrix[14, 5] = t2, c1

    energies = params.energies()
    for k in range(3, SIZE):
        i, j = LAYOUT[k]
        matrix[k, k] = 1j * (energies[j] - energies[i]) - params.dephasing(
            i, j)
    return matrix


def assemble_zeroth(params, rabi):
    """Assemble the zeroth order system, control field only.

    The constant term collects the decay into each ground level and the
    excited population eliminated through the trace.

    :param AtomicParams params: Atomic configuration.
    :param RabiTriple rabi: Control Rabi frequencies.
    :return LinearSystem: Matrix and right-hand side.
    """
    t1, t2, f0 = _couplings(rabi)
    rhs = np.zeros(SIZE, dtype=complex)
    rhs[:3] = -params.gamma13, -params.gamma23, -params.gamma03
    rhs[3:9] = -t1, -np.conj(t1), -t2, -np.conj(t2), -f0, -np.conj(f0)
    return LinearSystem(_zeroth_matrix(params, rabi), rhs)


def assemble_first(params, rabi, x0, branch):
    """Assemble the first order system of one probe component.

    The matrix is the zeroth order one shifted by ``i omega_pc``. The
    right-hand side is the probe coupling acting on the zeroth order
    solution ``x0``.

    :param AtomicParams params: Atomic configuration.
    :param RabiTriple rabi: Control Rabi frequencies.
    :param x0: Solved zeroth order vector.
    :param Branch branch: ``PLUS`` couples 3-1, ``MINUS`` couples 3-2.
    :return LinearSystem: Matrix and right-hand side.
    """
    matrix = _zeroth_matrix(params, rabi)
    matrix[np.diag_indices(SIZE)] += 1j * params.omega_pc
    weight = 1j / SQRT2
    rhs = np.zeros(SIZE, dtype=complex)
    if Branch(branch) is Branch.PLUS:
        rhs[0] = weight * x0[4]
        rhs[3] = -weight * (2 * x0[0] + x0[1] + x0[2] - 1)
        rhs[5] = -weight * x0[14]
        rhs[7] = -weight * x0[10]
        rhs[9] = weight * x0[8]
        rhs[13] = weight * x0[6]
    else:
        rhs[1] = weight * x0[6]
        rhs[3] = -weight * x0[13]
        rhs[5] = -weight * (x0[0] + 2 * x0[1] + x0[2] - 1)
        rhs[7] = -weight * x0[11]
        rhs[12] = weight * x0[8]
        rhs[14] = weight * x0[4]
    return LinearSystem(matrix, rhs)


def solve_linear(system):
    """Solve a dense complex system by LU with partial pivoting.

    ``system.rhs`` may hold several right-hand sides as columns.

    :raises SingularSystem: If the matrix is not finite or if a pivot is
        below ``PIVOT_TOLERANCE`` times the largest row norm.
    """
    matrix = np.asarray(system.matrix, dtype=complex)
    rhs = np.asarray(system.rhs, dtype=complex)
    if not (np.all(np.isfinite(matrix)) and np.all(np.isfinite(rhs))):
        raise SingularSystem('non finite linear system.')

    norm = np.abs(matrix).sum(axis=1).max()
    getrf, getrs, gecon = lapack.get_lapack_funcs(
        ('getrf', 'getrs', 'gecon'), (matrix, rhs))
    lu, piv, info = getrf(matrix)
    pivot = np.abs(np.diag(lu)).min()
    if norm == 0 or info > 0 or pivot < PIVOT_TOLERANCE * norm:
        raise SingularSystem('rank deficient system, smallest pivot %.3e '
                             'for a row norm of %.3e.' % (pivot, norm))
    if logger.isEnabledFor(logging.DEBUG):
        rcond, _ = gecon(lu, norm, norm='I')
        logger.debug('LU condition estimate: %.3e', 1 / rcond)

    solution, _ = getrs(lu, piv, rhs)
    residual = rhs - matrix @ solution
    scale = max(1.0, np.abs(rhs).max())
    if np.abs(residual).max() / scale >= RESIDUAL_TOLERANCE:
        correction, _ = getrs(lu, piv, residual)
        solution = solution + correction
        residual = rhs - matrix @ solution
        error = np.abs(residual).max() / scale
        if error >= RESIDUAL_TOLERANCE:
            logger.warning('Linear solve residual %.3e above tolerance.',
                           error)
    return solution


def degenerate(params, rabi):
    """Whether the ground sublevels hold a stationary dark manifold.

    With no Zeeman splitting and no collisional dephasing, every ground
    superposition orthogonal to the bright state is stationary. The
    zeroth order system is then singular and the steady state depends on
    the initial condition.
    """
    return (params.delta_zeeman == 0 and params.gamma_coll == 0 and
            rabi.magnitude > 0)


def dark_state(params, rabi):
    """Zeroth order steady state of the degenerate dark manifold.

    Starting from the unpolarized ground state, the dark part of the
    initial state is conserved and the bright part is optically pumped
    into the dark manifold, each decay channel feeding it through its
    projection. The excited population and every optical coherence
    vanish.

    :return: 15 complex values in steady-state ordering.
    """
    levels = (0, 1, 2)
    bright = np.conj([rabi.g0, rabi.g1, rabi.g2]) / math.sqrt(
        abs(rabi.g0) ** 2 + abs(rabi.g1) ** 2 + abs(rabi.g2) ** 2)
    dark = np.eye(3) - np.outer(bright, np.conj(bright))
    feed = dark @ np.diag([params.decay(k, EXCITED) for k in levels]) @ dark
    total = np.trace(feed).real
    if total <= 0:
        raise SingularSystem('no decay channel feeds the dark manifold.')
    ground = dark / 3 + feed / (3 * total)
    rho = np.zeros((4, 4), dtype=complex)
    rho[:3, :3] = ground
    return flatten(rho)


def _solve_dark_first(params, rabi, x0):
    """First order of the degenerate dark manifold at ``omega_pc = 0``.

    The probe only tilts the dark manifold, so the system is consistent
    and every solution has vanishing optical coherences. The least
    squares solution fixes the ground block, the optical coherences are
    set to zero.
    """
    plus = assemble_first(params, rabi, x0, Branch.PLUS)
    minus = assemble_first(params, rabi, x0, Branch.MINUS)
    rhs = np.column_stack((plus.rhs, minus.rhs))
    solution, _, rank, _ = lstsq(plus.matrix, rhs)
    scale = max(1.0, np.abs(rhs).max())
    error = np.abs(rhs - plus.matrix @ solution).max() / scale
    if error >= RESIDUAL_TOLERANCE:
        logger.warning('Dark manifold first order residual %.3e above '
                       'tolerance.', error)
    logger.debug('Dark manifold first order of rank %d.', rank)
    solution[3:9] = 0
    return solution


def steady_state(params, rabi):
    """Solve the zeroth and both first order systems.

    Both first order systems share their matrix, they are solved with a
    single factorisation. In the degenerate case (see :func:`degenerate`)
    the zeroth order is the state reached from the unpolarized ground
    state, :func:`dark_state`.

    :raises SingularSystem: When every control coupling vanishes.
    """
    if degenerate(params, rabi):
        x0 = dark_state(params, rabi)
        if params.omega_pc == 0:
            both = _solve_dark_first(params, rabi, x0)
            return SteadyStateSolution(x0, both[:, 0], both[:, 1])
    else:
        x0 = solve_linear(assemble_zeroth(params, rabi))
    plus = assemble_first(params, rabi, x0, Branch.PLUS)
    minus = assemble_first(params, rabi, x0, Branch.MINUS)
    both = solve_linear(
        LinearSystem(plus.matrix, np.column_stack((plus.rhs, minus.rhs))))
    return SteadyStateSolution(x0, both[:, 0], both[:, 1])


# Master equation oracle

def _density(vector):
    """Density matrix from a vector in steady-state ordering."""
    rho = np.zeros((4, 4), dtype=complex)
    for k, (i, j) in enumerate(LAYOUT):
        rho[i, j] = vector[k]
    rho[EXCITED, EXCITED] = 1 - vector[:3].sum()
    return rho


def flatten(rho):
    """Vector in steady-state ordering from a 4 x 4 density matrix."""
    return np.array([rho[i, j] for i, j in LAYOUT], dtype=complex)


def liouvillian(params, rabi, probe=(0, 0)):
    """Master equation generator acting on the row-major flattened rho.

    The probe is taken at ``omega_pc = 0`` and enters each transition
    through its circular projection, ``g / sqrt(2)``.

    :param tuple probe: Probe Rabi frequencies ``(g1, g2)``.
    :return: 16 x 16 complex array.
    """
    hamiltonian = np.diag(params.energies()).astype(complex)
    fields = {0: rabi.g0, 1: rabi.g1 + probe[0] / SQRT2,
              2: rabi.g2 + probe[1] / SQRT2}
    for k, value in fields.items():
        hamiltonian[EXCITED, k] -= value
        hamiltonian[k, EXCITED] -= np.conj(value)

    eye = np.eye(4)
    generator = -1j * (np.kron(hamiltonian, eye) -
                       np.kron(eye, hamiltonian.T))
    for k in GROUNDS:
        rate = params.decay(k, EXCITED)
        jump = np.zeros((4, 4))
        jump[k, EXCITED] = 1
        occupied = jump.T @ jump
        generator += rate * (np.kron(jump, jump) -
                             0.5 * np.kron(occupied, eye) -
                             0.5 * np.kron(eye, occupied.T))
    generator -= params.gamma_coll * np.diag(1 - eye.ravel())
    return generator


def master_system(params, rabi, probe=(0, 0)):
    """Steady-state system derived from the master equation generator.

    Without probe this is the same system as :func:`assemble_zeroth`,
    built independently.
    """
    generator = liouvillian(params, rabi, probe)
    order = [4 * i + j for i, j in LAYOUT]
    excited = 4 * EXCITED + EXCITED
    column = generator[order, excited]
    populations = np.isin(order, [5 * k for k in GROUNDS])
    matrix = generator[np.ix_(order, order)] - np.outer(column, populations)
    return LinearSystem(matrix, -column)


class _Evolution:
    """Fixed step RK4 propagation of the affine master equation.

    One step multiplies the augmented state by ``I + D``. Powers are formed
    by squaring on ``D`` itself, ``(I + D)^2 = I + 2D + D^2``, which keeps
    the slow directions resolved when ``D`` is small.
    """

    def __init__(self, params, rabi, probe, dt=None):
        if params.omega_pc != 0:
            raise ValidationError('omega_pc == 0 for time evolution',
                                  repr(params.omega_pc))
        system = master_system(params, rabi, probe)
        self.generator = np.zeros((SIZE + 1, SIZE + 1), dtype=complex)
        self.generator[:SIZE, :SIZE] = system.matrix
        self.generator[:SIZE, SIZE] = -system.rhs
        if dt is None:
            dt = default_step(params, rabi, probe)
        self.dt = dt

    def increment(self, dt):
        """RK4 step increment ``D`` for a step ``dt``."""
        step = dt * self.generator
        square = step @ step
        return step + square / 2 + square @ step / 6 + square @ square / 24

    def residual(self, state):
        """Largest time derivative of the density matrix elements."""
        return np.abs(self.generator @ state)[:SIZE].max()

    @staticmethod
    def initial():
        """Unpolarized ground state, augmented with the constant 1."""
        state = np.zeros(SIZE + 1, dtype=complex)
        state[:3] = 1 / 3
        state[SIZE] = 1
        return state


def default_step(params, rabi, probe=(0, 0)):
    """RK4 step resolving the fastest frequency of the problem."""
    scale = max(1.0, rabi.magnitude, abs(params.delta_control),
                abs(params.delta_zeeman), abs(probe[0]), abs(probe[1]))
    return 1e-3 / scale


def time_evolve(params, rabi, probe=(0, 0), t_end=0.0, dt=None,
                steady=False, tol=STEADY_TOLERANCE):
    """Integrate the master equation from the unpolarized ground state.

    :param tuple probe: Probe Rabi frequencies ``(g1, g2)`` at
        ``omega_pc = 0``.
    :param float t_end: Final time in units of ``1/gamma``.
    :param float dt: RK4 step, default :func:`default_step`. It is shrunk
        so that a whole number of steps reaches ``t_end``.
    :param bool steady: If ``True``, require ``max|drho/dt| < tol`` at
        ``t_end``.
    :return: The 4 x 4 density matrix at ``t_end``.
    :raises NonConvergence: If ``steady`` and the state still evolves.
    """
    evolution = _Evolution(params, rabi, probe, dt)
    state = evolution.initial()
    steps = int(math.ceil(t_end / evolution.dt - 1e-9)) if t_end > 0 else 0
    if steps:
        increment = evolution.increment(t_end / steps)
        while steps:
            if steps & 1:
                state = state + increment @ state
            steps >>= 1
            if steps:
                increment = 2 * increment + increment @ increment
    if steady:
        residual = evolution.residual(state)
        if residual >= tol:
            raise NonConvergence('max |drho/dt| = %.3e at t = %g.' %
                                 (residual, t_end))
    return _density(state[:SIZE])


def relax(params, rabi, probe=(0, 0), dt=None, tol=STEADY_TOLERANCE,
          doublings=80):
    """Integrate the master equation until it stops evolving.

    The horizon doubles at each round until ``max|drho/dt| < tol``.

    :return: The steady density matrix and the time reached.
    :raises NonConvergence: If ``doublings`` rounds do not suffice.
    """
    evolution = _Evolution(params, rabi, probe, dt)
    state = evolution.initial()
    increment = evolution.increment(evolution.dt)
    steps = 0
    block = 1
    for _ in range(doublings):
        state = state + increment @ state
        steps += block
        if evolution.residual(state) < tol:
            return _density(state[:SIZE]), steps * evolution.dt
        increment = 2 * increment + increment @ increment
        block *= 2
    raise NonConvergence('no steady state after t = %g, max |drho/dt| = '
                         '%.3e.' % (steps * evolution.dt,
                                    evolution.residual(state)))


def probe_response(params, rabi, branch, probe=1e-4, dt=None):
    """First order probe coefficient vector from master equation runs.

    The coefficient of ``g`` is separated from the one of ``conj(g)`` with
    four runs at ``g = +-probe`` and ``g = +-i probe``; central differences
    cancel the second order.

    :return: 15 complex values in steady-state ordering.
    """
    plus = Branch(branch) is Branch.PLUS

    def run(value):
        fields = (value, 0) if plus else (0, value)
        return flatten(relax(params, rabi, fields, dt)[0])

    real = (run(probe) - run(-probe)) / (2 * probe)
    imaginary = (run(1j * probe) - run(-1j * probe)) / (2j * probe)
    return (real + imaginary) / 2
