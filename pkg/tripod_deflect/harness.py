# -*- encoding: utf-8 -*-
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.
#
"""Experiment configuration, sweeps and result files.

An experiment is a YAML tree. Missing entries take the defaults of
:data:`DEFAULTS`; ``extends`` inherits a preset or another file. A sweep is
the Cartesian product of its entries, the last one varying fastest. An
entry with a ``zip`` key instead follows the entry it names, value for
value.
"""

import copy
import itertools
import logging
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, fields, replace
from typing import Dict, List, Optional, Tuple

import yaml

from tripod_deflect import Commands
from tripod_deflect.__about__ import __title__, __version__
from tripod_deflect.beams import BeamSpec, rayleigh_length
from tripod_deflect.core import Mode
from tripod_deflect.errors import NumericalError, ParseError, ValidationError
from tripod_deflect.formats import CSV, JSON
from tripod_deflect.medium import AtomicParams
from tripod_deflect.propagation import ResponseField
from tripod_deflect.response import (CACHE_DIGITS, FIELD_FLOOR, WEAK_FIELD,
                                     ResponseModel, prefactor)
from tripod_deflect.tools import merge, number

logger = logging.getLogger(__name__)

PRESETS = os.path.join(os.path.dirname(os.path.abspath(__file__)), 'presets')
RAYLEIGH_TOLERANCE = 0.01

DEFAULTS = {
    'name': 'custom',
    'extends': None,
    'atomic': {f.name: f.default for f in fields(AtomicParams)},
    'beam': {f.name: f.default for f in fields(BeamSpec)},
    'probe': {'x0': None, 'slope0': 0.0},
    'grid': {
        'cell_length': 1.0,
        'steps': 2000,
        'h_gradient': None,
        'x_bound': 1.0
    },
    'response': {
        'prefactor': None,
        'field_floor': FIELD_FLOOR,
        'weak_field': WEAK_FIELD,
        'cache_digits': CACHE_DIGITS
    },
    'mode': None,
    'chimap': {'x_min': None, 'x_max': None, 'nx': 101, 'nz': 101},
    'spectrum': {
        'delta_min': -5.0,
        'delta_max': 5.0,
        'points': 401,
        'x': None,
        'z': 0.0
    },
    'sweep': [],
}
STRINGS = {'name', 'extends', 'beam.family', 'mode'}
INTEGERS = {
    'beam.m', 'grid.steps', 'chimap.nx', 'chimap.nz', 'spectrum.points',
    'response.cache_digits'
}
NULLABLE = {
    'extends', 'mode', 'beam.z_r', 'probe.x0', 'grid.h_gradient',
    'response.prefactor', 'response.cache_digits', 'chimap.x_min',
    'chimap.x_max', 'spectrum.x'
}


@dataclass(frozen=True)
class ResponseSettings:
    """Settings of the susceptibility model."""
    prefactor: Optional[float]
    field_floor: float
    weak_field: float
    cache_digits: Optional[int]


@dataclass(frozen=True)
class MapSettings:
    """Grid of the susceptibility map."""
    x_min: float
    x_max: float
    nx: int
    nz: int


@dataclass(frozen=True)
class SpectrumSettings:
    """Probe detuning scan."""
    delta_min: float
    delta_max: float
    points: int
    x: float
    z: float


@dataclass(frozen=True)
class Sweep:
    """Values taken by one configuration field.

    :param str leader: Path of the sweep this one follows, ``None`` for an
        independent sweep.

    """
    path: str
    values: Tuple
    leader: Optional[str] = None


@dataclass(frozen=True)
class ExperimentConfig:
    """Fully resolved experiment.

    :param dict tree: Resolved configuration tree, enough to regenerate the
        experiment.

    """
    name: str
    atomic: AtomicParams
    beam: BeamSpec
    x0: float
    slope0: float
    cell_length: float
    steps: int
    h_gradient: float
    x_bound: float
    mode: Optional[Mode]
    response: ResponseSettings
    chimap: MapSettings
    spectrum: SpectrumSettings
    sweep: Tuple = ()
    tree: Dict = field(default_factory=dict, compare=False)
    source: Tuple = field(default=(), compare=False, repr=False)

    def model(self, params=None):
        """Susceptibility model of the cell."""
        return ResponseModel(self.beam, params or self.atomic,
                             scale=self.response.prefactor,
                             field_floor=self.response.field_floor,
                             weak_field=self.response.weak_field,
                             cache_digits=self.response.cache_digits)

    def field(self):
        """Index field seen by the probe."""
        return ResponseField(self.model(), step=self.h_gradient)

    def points(self):
        """Generate the sweep points.

        :return: ``(index, label, config)`` tuples, ``label`` mapping each
            swept path to its value.
        """
        if not self.sweep:
            yield 0, {}, self
            return
        raw, overrides = self.source
        leaders = [sweep for sweep in self.sweep if sweep.leader is None]
        ranges = [range(len(sweep.values)) for sweep in leaders]
        for index, positions in enumerate(itertools.product(*ranges)):
            position = {sweep.path: k for sweep, k in zip(leaders, positions)}
            tree = copy.deepcopy(raw)
            tree['sweep'] = []
            label = {}
            for sweep in self.sweep:
                value = sweep.values[position[sweep.leader or sweep.path]]
                _assign(tree, sweep.path, value)
                label[sweep.path] = value
            yield index, label, resolve(merge(tree, overrides), warn=False)


@dataclass
class Report:
    """Files written by :func:`run` and the failed sweep points."""
    written: List = field(default_factory=list)
    failures: List = field(default_factory=list)


# Reading

def preset_path(name):
    """Path of a shipped preset."""
    return os.path.join(PRESETS, '%s.yml' % name)


def presets():
    """Return the sorted list of shipped preset names."""
    return sorted(os.path.splitext(name)[0] for name in os.listdir(PRESETS)
                  if name.endswith('.yml'))


def _line(node, keys):
    """Line of the YAML node at ``keys``, if it can be found."""
    for key in keys:
        if not isinstance(node, yaml.MappingNode):
            return None
        for knode, vnode in node.value:
            if knode.value == str(key):
                node = vnode
                break
        else:
            return None
    return node.start_mark.line + 1


def _convert(path, value, node=None):
    """Convert a leaf value according to its kind."""
    line = _line(node, path.split('.')) if node is not None else None
    if value is None:
        if path in NULLABLE:
            return None
        raise ParseError('missing value', line=line, field=path)
    if path in STRINGS:
        if not isinstance(value, str):
            raise ParseError('expected a string, got %r' % (value,),
                             line=line, field=path)
        return value
    try:
        converted = number(value, path)
    except ParseError:
        raise ParseError('expected a number, got %r' % (value,), line=line,
                         field=path)
    if path in INTEGERS:
        if converted != int(converted):
            raise ParseError('expected an integer, got %r' % (value,),
                             line=line, field=path)
        return int(converted)
    return converted


def _leaves():
    """Dotted paths of every configuration leaf."""
    for key, value in DEFAULTS.items():
        if isinstance(value, dict):
            for sub in value:
                yield '%s.%s' % (key, sub)
        elif key not in ('sweep', 'extends'):
            yield key


def _normalize(data, node=None):
    """Check the keys of a configuration tree and convert its leaves."""
    tree = {}
    for key, value in data.items():
        if key not in DEFAULTS:
            raise ParseError('unknown entry', line=_line(node, [key]),
                             field=str(key))
        default = DEFAULTS[key]
        if key == 'sweep':
            tree[key] = _normalize_sweep(value, node)
        elif isinstance(default, dict):
            if not isinstance(value, dict):
                raise ParseError('expected a mapping', line=_line(node, [key]),
                                 field=key)
            tree[key] = {}
            for sub, leaf in value.items():
                path = '%s.%s' % (key, sub)
                if sub not in default:
                    raise ParseError('unknown entry', field=path,
                                     line=_line(node, [key, sub]))
                tree[key][sub] = _convert(path, leaf, node)
        else:
            tree[key] = _convert(key, value, node)
    return tree


def _normalize_sweep(entries, node=None):
    if entries is None:
        return []
    line = _line(node, ['sweep'])
    if not isinstance(entries, list):
        raise ParseError('expected a list of {path, values}', line=line,
                         field='sweep')
    leaves = set(_leaves()) - {'name'}
    sweeps = []
    lengths = {}
    for entry in entries:
        if not isinstance(entry, dict) or not (
                {'path', 'values'} <= set(entry) <= {'path', 'values', 'zip'}):
            raise ParseError('expected {path, values[, zip]}', line=line,
                             field='sweep')
        path = entry['path']
        if path not in leaves:
            raise ValidationError('sweep paths exist', str(path))
        values = entry['values']
        if not isinstance(values, list) or not values:
            raise ParseError('expected a non-empty list of values',
                             line=line, field='sweep.%s' % path)
        sweep = {
            'path': path,
            'values': [_convert(path, value) for value in values]
        }
        leader = entry.get('zip')
        if leader is not None:
            if leader not in lengths:
                raise ValidationError('zip names an earlier independent '
                                      'sweep', '%s -> %s' % (path, leader))
            if lengths[leader] != len(values):
                raise ValidationError(
                    'zipped sweeps have the same length', '%s: %d, %s: %d' %
                    (leader, lengths[leader], path, len(values)))
            sweep['zip'] = leader
        else:
            lengths[path] = len(values)
        sweeps.append(sweep)
    return sweeps


def _read(path, seen=()):
    """Read, check and inherit one configuration file."""
    path = os.path.abspath(path)
    if path in seen:
        raise ParseError('circular extends of %s' % path)
    try:
        with open(path, 'r', encoding='utf-8') as file:
            text = file.read()
    except OSError as error:
        raise ParseError('cannot read %s: %s' % (path, error.strerror))

    try:
        data = yaml.safe_load(text)
        node = yaml.compose(text, Loader=yaml.SafeLoader)
    except yaml.YAMLError as error:
        mark = getattr(error, 'problem_mark', None)
        raise ParseError('%s is not valid YAML: %s' %
                         (path, getattr(error, 'problem', error)),
                         line=mark.line + 1 if mark else None)
    if data is None:
        raise ParseError('%s is empty' % path)
    if not isinstance(data, dict):
        raise ParseError('%s is not a mapping' % path, line=1)

    # Result sidecars carry their configuration
    if 'software' in data and 'config' in data:
        data = data['config']
        node = dict((k.value, v) for k, v in node.value)['config']
    tree = _normalize(data, node)

    parent = tree.pop('extends', None)
    if parent:
        local = os.path.join(os.path.dirname(path), parent)
        ppath = local if os.path.isfile(local) else preset_path(parent)
        tree = merge(_read(ppath, seen + (path,)), tree)
    return tree


def _assign(tree, path, value):
    """Set the leaf at the dotted ``path``."""
    keys = path.split('.')
    for key in keys[:-1]:
        tree = tree[key]
    tree[keys[-1]] = value


def _positive(name, value):
    if not value > 0:
        raise ValidationError('%s > 0' % name, repr(value))


def resolve(tree, warn=True):
    """Resolve the defaults of a configuration tree and validate it.

    Defaults derived from other values are written back in the tree so that
    it fully describes the experiment.
    """
    tree = copy.deepcopy(tree)
    tree['extends'] = None
    atomic = AtomicParams(**tree['atomic'])
    beam = BeamSpec(**tree['beam'])
    if warn and beam.family == 'laguerre' and tree['beam']['z_r'] is not None:
        computed = rayleigh_length(beam.w0, beam.wavelength)
        if abs(beam.z_r - computed) > RAYLEIGH_TOLERANCE * computed:
            logger.warning('Rayleigh length %g cm differs from pi w0^2 / '
                           'lambda = %g cm, keeping %g cm.', beam.z_r,
                           computed, beam.z_r)
    tree['beam']['z_r'] = beam.z_r

    probe, grid = tree['probe'], tree['grid']
    if probe['x0'] is None:
        probe['x0'] = beam.profile.offset(beam)
    if grid['h_gradient'] is None:
        grid['h_gradient'] = min(beam.sigma, beam.w0) / 200
    for name in ('cell_length', 'h_gradient', 'x_bound'):
        _positive('grid.%s' % name, grid[name])
    if grid['steps'] < 2:
        raise ValidationError('grid.steps >= 2', repr(grid['steps']))

    mode = None
    if tree['mode'] is not None:
        try:
            mode = Mode(tree['mode'])
        except ValueError:
            raise ValidationError(
                'mode in {%s}' % ', '.join(m.value for m in Mode),
                tree['mode'])

    settings = tree['response']
    if settings['prefactor'] is not None:
        _positive('response.prefactor', settings['prefactor'])
    if not settings['field_floor'] >= 0:
        raise ValidationError('response.field_floor >= 0',
                              repr(settings['field_floor']))
    _positive('response.weak_field', settings['weak_field'])
    if settings['cache_digits'] is not None and settings['cache_digits'] < 1:
        raise ValidationError('response.cache_digits >= 1',
                              repr(settings['cache_digits']))

    chimap = tree['chimap']
    reach = 3 * beam.profile.width(beam) + grid['cell_length'] * math.tan(
        beam.theta_c)
    if chimap['x_min'] is None:
        chimap['x_min'] = -reach
    if chimap['x_max'] is None:
        chimap['x_max'] = reach
    if not chimap['x_min'] < chimap['x_max']:
        raise ValidationError('chimap.x_min < chimap.x_max')
    for name in ('nx', 'nz'):
        if chimap[name] < 2:
            raise ValidationError('chimap.%s >= 2' % name)

    spectrum = tree['spectrum']
    if spectrum['x'] is None:
        spectrum['x'] = probe['x0']
    if not spectrum['delta_min'] < spectrum['delta_max']:
        raise ValidationError('spectrum.delta_min < spectrum.delta_max')
    if spectrum['points'] < 2:
        raise ValidationError('spectrum.points >= 2')

    sweeps = tuple(Sweep(s['path'], tuple(s['values']), s.get('zip'))
                   for s in tree['sweep'])
    return ExperimentConfig(
        name=tree['name'], atomic=atomic, beam=beam, x0=probe['x0'],
        slope0=probe['slope0'], cell_length=grid['cell_length'],
        steps=grid['steps'], h_gradient=grid['h_gradient'],
        x_bound=grid['x_bound'], mode=mode,
        response=ResponseSettings(**settings), chimap=MapSettings(**chimap),
        spectrum=SpectrumSettings(**spectrum), sweep=sweeps, tree=tree)


def load_config(path=None, preset=None, overrides=None):
    """Load, inherit, validate and resolve an experiment configuration.

    :param str path: YAML configuration file, or a result sidecar.
    :param str preset: Shipped preset name, extended by ``path`` if both
        are given.
    :param dict overrides: Configuration tree taking precedence over the
        files, sweep values included.
    :raises ParseError: If a file cannot be read or holds unknown entries.
    :raises ValidationError: If a value breaks a model invariant.
    """
    if path is None and preset is None:
        raise ParseError('no configuration file nor preset given')
    data = {}
    if preset is not None:
        if preset not in presets():
            raise ParseError('unknown preset %s, available: %s' %
                             (preset, ', '.join(presets())))
        data = _read(preset_path(preset))
    if path is not None:
        data = merge(data, _read(path))

    raw = merge(DEFAULTS, data)
    raw['extends'] = None
    overrides = _normalize(overrides or {})
    config = resolve(merge(raw, overrides))
    return replace(config, source=(raw, overrides))


# Running

def _compute(command):
    point = command.point
    logger.info('Computing %s for %s.', command.name, point.name)
    result = command.compute()
    logger.info('Done %s for %s.', command.name, point.name)
    return result


def _floor_step(point):
    """Susceptibility jump at the field floor, as ``[re, im]`` pairs."""
    step = point.model().floor_step()
    if step is None:
        return None
    return {branch: [value.real, value.imag]
            for branch, value in zip(('plus', 'minus'), step)}


def metadata(command, index, label, result, files):
    """Sidecar content of one sweep point."""
    point = command.point
    return {
        'software': {'name': __title__, 'version': __version__},
        'command': command.name,
        'index': index,
        'sweep_point': label,
        'columns': list(command.columns),
        'rows': len(result.rows),
        'mode': command.ray_mode.value,
        'envelope': point.beam.profile.description,
        'prefactor': (point.response.prefactor if point.response.prefactor
                      is not None else prefactor(point.atomic)),
        'floor_step': _floor_step(point),
        'grid': {
            'cell_length': point.cell_length,
            'steps': point.steps,
            'h_gradient': point.h_gradient,
            'x_bound': point.x_bound,
        },
        'results': result.metadata,
        'files': files,
        'config': point.tree,
    }


def _write(out, command, index, label, result):
    """Write the files of one sweep point, all or nothing."""
    stem = os.path.join(out, '%s-%03d' % (command.name, index))
    paths = {'table': stem + '.csv'}
    for suffix in sorted(result.attachments):
        paths[suffix] = '%s-%s.json' % (stem, suffix)
    paths['sidecar'] = stem + '.json'
    files = [os.path.basename(paths[key]) for key in paths if key != 'sidecar']

    written = []
    try:
        with CSV(paths['table'], command.columns) as table:
            table.write(result.rows)
        written.append(paths['table'])
        for suffix in sorted(result.attachments):
            with JSON(paths[suffix]) as attachment:
                attachment.write(result.attachments[suffix])
            written.append(paths[suffix])
        with JSON(paths['sidecar']) as sidecar:
            sidecar.write(metadata(command, index, label, result, files))
        written.append(paths['sidecar'])
    except BaseException:
        for path in written:
            os.remove(path)
        raise
    return written


def run(config, command, out='.', jobs=1):
    """Run a command over every sweep point of an experiment.

    Sweep points are computed in a pool of ``jobs`` workers and written in
    sweep order. A numerical failure of one point does not stop the others;
    it is reported in :attr:`Report.failures` and leaves no file behind.

    :param ExperimentConfig config: Resolved experiment.
    :param str command: Command name.
    :param str out: Output directory.
    :return Report: Written files and failures.
    """
    cls = Commands().get(command)
    report = Report()
    points = [(index, label, cls(point))
              for index, label, point in config.points()]
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        futures = [pool.submit(_compute, cmd) for _, _, cmd in points]
        for (index, label, cmd), future in zip(points, futures):
            try:
                result = future.result()
            except NumericalError as error:
                logger.warning('Sweep point %d %s failed: %s', index, label,
                               error)
                report.failures.append((index, label, error))
                continue
            report.written.extend(_write(out, cmd, index, label, result))
    return report
