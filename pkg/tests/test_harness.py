# -*- encoding: utf-8 -*-
# tripod deflect - test suite
# Copyright (C) 2020 tripod-deflect developers.
#

import csv
import json
import math
import os

from tripod_deflect import Commands
from tripod_deflect.beams import envelope
from tripod_deflect.command import Result
from tripod_deflect.core import Mode
from tripod_deflect.errors import ParseError, ValidationError
from tripod_deflect.harness import _write, load_config, presets, run
from tripod_deflect.response import prefactor
import tests


class TestPresets(tests.Test):
    """Test the shipped presets."""

    def test_list(self):
        """Testing: shipped preset names."""
        self.assertEqual(presets(), ['fig2', 'fig3', 'fig4'])

    def test_gaussian(self):
        """Testing: Gaussian control beam under four incidences."""
        config = load_config(preset='fig2')
        self.assertEqual(config.name, 'fig2')
        self.assertEqual(config.beam.family, 'gaussian')
        self.assertAlmostEqual(config.beam.sigma, math.sqrt(2) / 10)
        self.assertAlmostEqual(config.atomic.gamma, 2 * math.pi * 6.079e6 / 12)
        self.assertEqual(config.atomic.number_density, 5e12)
        points = list(config.points())
        self.assertEqual(len(points), 4)
        thetas = [point.beam.theta_c for _, _, point in points]
        for theta, expected in zip(thetas, (10, 6, 4, 3)):
            self.assertAlmostEqual(theta, math.pi / expected)
        self.assertEqual([index for index, _, _ in points], [0, 1, 2, 3])
        self.assertEqual(list(points[0][1]), ['beam.theta_c', 'probe.x0'])
        for _, _, point in points:
            magnitude = abs(envelope(point.x0, 0.0, 0.0, point.beam))
            self.assertAlmostEqual(magnitude, 0.6, places=3)

    def test_vortex(self):
        """Testing: pinned Rayleigh length of the vortex preset."""
        with self.assertLogs('tripod_deflect.harness', 'WARNING'):
            config = load_config(preset='fig3')
        self.assertEqual(config.beam.family, 'laguerre')
        self.assertEqual(config.beam.m, 3)
        self.assertEqual(config.beam.z_r, 5.7)
        self.assertAlmostEqual(config.x0, 0.012 * math.sqrt(1.5) / 2)
        points = list(config.points())
        self.assertEqual([p.cell_length for _, _, p in points],
                         [0.04, 0.024, 0.0165, 0.0135])
        for _, _, point in points:
            # Ring peak of the vortex
            radius = point.x0 * math.cos(point.beam.theta_c)
            self.assertAlmostEqual(radius, 0.012 * math.sqrt(1.5), places=4)

    def test_families(self):
        """Testing: sweep over the beam families."""
        config = load_config(preset='fig4')
        points = list(config.points())
        self.assertEqual([p.beam.family for _, _, p in points],
                         ['gaussian', 'laguerre'])
        self.assertAlmostEqual(points[0][2].beam.theta_c, math.pi / 6)
        self.assertEqual(points[1][2].sweep, ())
        self.assertEqual([p.x0 for _, _, p in points], [0.1167, -0.00735])
        self.assertEqual([p.cell_length for _, _, p in points], [1.0, 0.25])


class TestLoad(tests.Test):
    """Test reading the experiment configurations."""

    def test_small(self):
        """Testing: resolved defaults."""
        config = load_config(tests.config('small'))
        self.assertEqual(config.name, 'small')
        self.assertAlmostEqual(config.beam.theta_c, math.pi / 4)
        self.assertAlmostEqual(config.x0, config.beam.sigma / 2)
        self.assertAlmostEqual(config.h_gradient, config.beam.w0 / 200)
        self.assertIsNone(config.mode)
        self.assertEqual(config.steps, tests.conf['small']['steps'])
        self.assertAlmostEqual(config.chimap.x_max, -config.chimap.x_min)
        self.assertAlmostEqual(config.chimap.x_max,
                               3 * config.beam.sigma + 0.5)
        self.assertEqual(config.spectrum.x, config.x0)
        self.assertEqual(config.tree['probe']['x0'], config.x0)
        self.assertEqual(list(config.points())[0][2], config)

    def test_extends(self):
        """Testing: sweep extending a local file."""
        config = load_config(tests.config('sweep'))
        self.assertEqual(config.name, 'sweep')
        self.assertEqual(config.steps, 10)
        self.assertEqual(config.cell_length, 0.5)
        points = list(config.points())
        self.assertEqual(len(points), 6)
        labels = [label for _, label, _ in points]
        self.assertAlmostEqual(labels[0]['beam.theta_c'], math.pi / 6)
        self.assertEqual([label['atomic.delta_zeeman'] for label in labels],
                         [0.01, 0.02, 0.05] * 2)
        self.assertEqual(points[4][2].atomic.delta_zeeman, 0.02)
        self.assertAlmostEqual(points[4][2].beam.theta_c, math.pi / 4)

    def test_overrides(self):
        """Testing: program options take precedence over the sweep."""
        overrides = {'grid': {'steps': 7}, 'mode': 'self_consistent'}
        config = load_config(tests.config('sweep'), overrides=overrides)
        self.assertEqual(config.steps, 7)
        for _, _, point in config.points():
            self.assertEqual(point.steps, 7)
            self.assertIs(point.mode, Mode.SELF_CONSISTENT)

    def test_preset_and_file(self):
        """Testing: configuration file on top of a preset."""
        config = load_config(tests.config('small'), preset='fig2')
        self.assertEqual(config.name, 'small')
        self.assertEqual(config.cell_length, 0.5)
        self.assertEqual(len(config.sweep), 2)

    def test_nothing(self):
        """Testing: no configuration at all."""
        with self.assertRaises(ParseError):
            load_config()

    def test_unknown_preset(self):
        """Testing: unknown preset."""
        with self.assertRaises(ParseError) as cm:
            load_config(preset='fig9')
        self.assertIn('fig2', str(cm.exception))

    def test_missing(self):
        """Testing: missing configuration file."""
        with self.assertRaises(ParseError):
            load_config(tests.config('does-not-exist'))

    def test_empty(self):
        """Testing: empty configuration file."""
        with self.assertRaises(ParseError) as cm:
            load_config(tests.config('empty'))
        self.assertIn('is empty', str(cm.exception))

    def test_malformed(self):
        """Testing: malformed YAML."""
        with self.assertRaises(ParseError):
            load_config(tests.config('malformed'))

    def test_unknown(self):
        """Testing: unknown configuration entry."""
        with self.assertRaises(ParseError) as cm:
            load_config(tests.config('unknown'))
        self.assertEqual(cm.exception.field, 'beam.sigmaa')
        self.assertEqual(cm.exception.line, 4)

    def test_not_a_number(self):
        """Testing: text where a number is expected."""
        with self.assertRaises(ParseError) as cm:
            load_config(tests.config('notanumber'))
        self.assertEqual(cm.exception.field, 'grid.cell_length')
        self.assertEqual(cm.exception.line, 3)

    def test_invalid(self):
        """Testing: value breaking a model invariant."""
        with self.assertRaises(ValidationError) as cm:
            load_config(tests.config('invalid'))
        self.assertIn('decay rates >= 0', str(cm.exception))

    def test_circular(self):
        """Testing: circular extends."""
        with self.assertRaises(ParseError) as cm:
            load_config(tests.config('loop-a'))
        self.assertIn('circular', str(cm.exception))

    def test_sweep_path(self):
        """Testing: sweep over an unknown field."""
        with self.assertRaises(ValidationError):
            load_config(tests.config('badsweep'))

    def test_zip(self):
        """Testing: a zipped sweep follows its leader."""
        config = load_config(tests.config('zip'))
        points = list(config.points())
        self.assertEqual(len(points), 6)
        labels = [label for _, label, _ in points]
        self.assertEqual([label['probe.x0'] for label in labels],
                         [0.05, 0.06, 0.08] * 2)
        self.assertAlmostEqual(points[4][2].beam.theta_c, math.pi / 4)
        self.assertEqual(points[4][2].x0, 0.06)
        self.assertEqual(points[4][2].atomic.delta_zeeman, 0.02)
        self.assertEqual(config.sweep[2].leader, 'beam.theta_c')

    def test_zip_length(self):
        """Testing: zipped sweeps of different lengths."""
        with self.assertRaises(ValidationError) as cm:
            load_config(tests.config('badzip'))
        self.assertIn('same length', str(cm.exception))

    def test_zip_leader(self):
        """Testing: a zipped sweep needs an earlier independent sweep."""
        overrides = {'sweep': [
            {'path': 'probe.x0', 'zip': 'beam.theta_c', 'values': [0.1]},
            {'path': 'beam.theta_c', 'values': [0.5]},
        ]}
        with self.assertRaises(ValidationError):
            load_config(tests.config('small'), overrides=overrides)

    def test_field_floor(self):
        """Testing: the field floor may vanish but not be negative."""
        config = load_config(tests.config('small'))
        self.assertEqual(config.response.field_floor, 0.0)
        with self.assertRaises(ValidationError):
            load_config(tests.config('small'),
                        overrides={'response': {'field_floor': -1e-8}})

    def test_invalid_mode(self):
        """Testing: unknown ray model."""
        with self.assertRaises(ValidationError):
            load_config(tests.config('small'), overrides={'mode': 'exact'})

    def test_steps(self):
        """Testing: too few steps along the cell."""
        with self.assertRaises(ValidationError):
            load_config(tests.config('small'), overrides={'grid': {
                'steps': 1
            }})


class TestRun(tests.Test):
    """Test running the commands over the sweep points."""

    def table(self, name):
        """Rows of a written table."""
        with open(os.path.join(self.prefix, name), newline='') as file:
            return list(csv.reader(file))

    def sidecar(self, name):
        """Content of a written sidecar."""
        with open(os.path.join(self.prefix, name)) as file:
            return json.load(file)

    def test_divergence(self):
        """Testing: divergence table and sidecar."""
        self._tmpdir()
        config = load_config(tests.config('small'))
        report = run(config, 'divergence', self.prefix)
        self.assertEqual(report.failures, [])
        self.assertEqual([os.path.basename(path) for path in report.written],
                         ['divergence-000.csv', 'divergence-000.json'])

        rows = self.table('divergence-000.csv')
        self.assertEqual(rows[0], list(Commands().get('divergence').columns))
        self.assertEqual(len(rows), tests.conf['small']['steps'] + 2)
        self.assertEqual(rows[1][:2], ['0', '0'])
        self.assertEqual(float(rows[-1][0]), 0.5)
        for row in rows[1:]:
            self.assertAlmostEqual(float(row[3]),
                                   float(row[1]) - float(row[2]), places=9)

        sidecar = self.sidecar('divergence-000.json')
        self.assertEqual(sidecar['command'], 'divergence')
        self.assertEqual(sidecar['mode'], 'fixed_line')
        self.assertEqual(sidecar['rows'], len(rows) - 1)
        self.assertEqual(sidecar['files'], ['divergence-000.csv'])
        self.assertEqual(sidecar['software']['name'], 'tripod-deflect')
        self.assertIn('phi_extremum_cm', sidecar['results'])
        self.assertEqual(sidecar['prefactor'], prefactor(config.atomic))
        step = config.model().floor_step()
        self.assertEqual(sidecar['floor_step']['plus'],
                         [step[0].real, step[0].imag])
        self.assertEqual(set(sidecar['floor_step']), {'plus', 'minus'})
        self.assertEqual(sidecar['config']['name'], 'small')

    def test_self_consistent(self):
        """Testing: divergence along the traced rays."""
        self._tmpdir()
        config = load_config(tests.config('small'),
                             overrides={'mode': 'self_consistent'})
        run(config, 'divergence', self.prefix)
        sidecar = self.sidecar('divergence-000.json')
        self.assertEqual(sidecar['mode'], 'self_consistent')

    def test_rays(self):
        """Testing: ray table and foci."""
        self._tmpdir()
        config = load_config(tests.config('small'))
        report = run(config, 'rays', self.prefix)
        self.assertEqual(len(report.written), 3)
        foci = self.sidecar('rays-000-foci.json')
        self.assertIsInstance(foci, list)
        sidecar = self.sidecar('rays-000.json')
        self.assertEqual(sidecar['mode'], 'self_consistent')
        self.assertEqual(sidecar['files'],
                         ['rays-000.csv', 'rays-000-foci.json'])
        self.assertEqual(sidecar['results']['foci_cm'], foci)
        rows = self.table('rays-000.csv')
        self.assertAlmostEqual(float(rows[1][1]), config.x0)
        self.assertAlmostEqual(float(rows[1][2]), config.x0)

    def test_chimap(self):
        """Testing: susceptibility map."""
        self._tmpdir()
        config = load_config(tests.config('small'))
        run(config, 'chimap', self.prefix)
        nx, nz = tests.conf['small']['chimap']
        rows = self.table('chimap-000.csv')
        self.assertEqual(len(rows), nx * nz + 1)
        self.assertAlmostEqual(float(rows[1][0]), config.chimap.x_min)
        self.assertEqual(float(rows[1][1]), 0.0)
        self.assertEqual(float(rows[2][1]), 0.0)

    def test_spectrum(self):
        """Testing: susceptibility spectrum."""
        self._tmpdir()
        config = load_config(tests.config('small'))
        run(config, 'spectrum', self.prefix)
        rows = self.table('spectrum-000.csv')
        self.assertEqual(len(rows), tests.conf['small']['spectrum'] + 1)
        self.assertEqual(float(rows[1][0]), -2.0)
        self.assertEqual(float(rows[-1][0]), 2.0)

    def test_sweep(self):
        """Testing: one table per sweep point."""
        self._tmpdir()
        config = load_config(tests.config('sweep'))
        report = run(config, 'divergence', self.prefix)
        self.assertEqual(len(report.written), 12)
        sidecar = self.sidecar('divergence-004.json')
        self.assertEqual(sidecar['index'], 4)
        self.assertEqual(sidecar['sweep_point']['atomic.delta_zeeman'], 0.02)
        self.assertEqual(sidecar['config']['sweep'], [])

    def test_jobs(self):
        """Testing: parallel sweep points give the same files."""
        config = load_config(tests.config('sweep'))
        self._tmpdir()
        serial = run(config, 'divergence',
                     os.path.join(self.prefix, 'serial'), jobs=1)
        parallel = run(config, 'divergence',
                       os.path.join(self.prefix, 'parallel'), jobs=3)
        self.assertEqual(len(parallel.written), 12)
        for one, other in zip(serial.written, parallel.written):
            self.assertEqual(os.path.basename(one), os.path.basename(other))
            self.assertEqual(tests.read(one, 'rb'), tests.read(other, 'rb'))

    def test_rerun(self):
        """Testing: identical reruns."""
        config = load_config(tests.config('small'))
        self._tmpdir()
        first = run(config, 'divergence', self.prefix).written
        contents = [tests.read(path, 'rb') for path in first]
        second = run(config, 'divergence', self.prefix).written
        self.assertEqual(first, second)
        self.assertEqual(contents, [tests.read(path, 'rb') for path in second])

    def test_reload(self):
        """Testing: a sidecar regenerates its table."""
        self._tmpdir()
        config = load_config(tests.config('sweep'))
        report = run(config, 'divergence', self.prefix)
        table = tests.read(report.written[6], 'rb')
        sidecar = report.written[7]
        self.assertTrue(sidecar.endswith('divergence-003.json'))

        reloaded = load_config(sidecar)
        self.assertEqual(reloaded.sweep, ())
        self.prefix = os.path.join(self.prefix, 'reload')
        again = run(reloaded, 'divergence', self.prefix)
        self.assertEqual(tests.read(again.written[0], 'rb'), table)

    def test_failure(self):
        """Testing: numerical failures leave no file behind."""
        self._tmpdir()
        config = load_config(tests.config('escape'))
        report = run(config, 'rays', self.prefix)
        self.assertEqual(report.written, [])
        self.assertEqual(len(report.failures), 1)
        self.assertEqual(os.listdir(self.prefix), [])

    def test_partial(self):
        """Testing: partial outputs are removed."""
        self._tmpdir()
        config = load_config(tests.config('small'))
        command = Commands().get('divergence')(config)
        with self.assertRaises(ValueError):
            _write(self.prefix, command, 0, {}, Result(rows=[(0.0, 1.0)]))
        self.assertEqual(os.listdir(self.prefix), [])
