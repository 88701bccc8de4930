# -*- encoding: utf-8 -*-
# tripod deflect - test suite
# Copyright (C) 2020 tripod-deflect developers.
#

import json
import os

import tests


class TestMainRun(tests.Test):
    """Test the simulation commands from the command line."""

    def setUp(self):
        self._tmpdir()

    def lines(self, name):
        """Lines of a written file."""
        return tests.read(os.path.join(self.prefix, name)).splitlines()

    def test_main_divergence(self):
        """Testing: tdeflect divergence -c small.yml -o dir."""
        cmd = ['divergence', '-c', tests.config('small'), '-o', self.prefix]
        self.main(cmd)
        lines = self.lines('divergence-000.csv')
        self.assertEqual(lines[0], 'z_cm,theta_plus_rad,theta_minus_rad,'
                         'phi_rad,T_plus,T_minus')
        self.assertEqual(len(lines), tests.conf['small']['steps'] + 2)

    def test_main_steps(self):
        """Testing: tdeflect divergence -c small.yml --steps 8."""
        cmd = ['divergence', '-c', tests.config('small'), '-o', self.prefix,
               '--steps', '8', '-q']
        self.main(cmd)
        self.assertEqual(len(self.lines('divergence-000.csv')), 10)

    def test_main_mode(self):
        """Testing: tdeflect rays -c small.yml --mode fixed_line."""
        cmd = ['rays', '-c', tests.config('small'), '-o', self.prefix,
               '--mode', 'fixed_line', '--x0', '0.05']
        self.main(cmd)
        with open(os.path.join(self.prefix, 'rays-000.json')) as file:
            sidecar = json.load(file)
        self.assertEqual(sidecar['mode'], 'fixed_line')
        self.assertEqual(sidecar['config']['probe']['x0'], 0.05)

    def test_main_verbose(self):
        """Testing: tdeflect chimap -c small.yml -vvv."""
        cmd = ['chimap', '-c', tests.config('small'), '-o', self.prefix,
               '-vvv']
        self.main(cmd)
        self.assertTrue(
            os.path.isfile(os.path.join(self.prefix, 'chimap-000.csv')))

    def test_main_sweep_jobs(self):
        """Testing: tdeflect spectrum -c sweep.yml -j 2."""
        cmd = ['spectrum', '-c', tests.config('sweep'), '-o', self.prefix,
               '-j', '2']
        self.main(cmd)
        self.assertEqual(len(os.listdir(self.prefix)), 12)

    def test_main_sidecar(self):
        """Testing: tdeflect divergence -c divergence-000.json."""
        cmd = ['divergence', '-c', tests.config('small'), '-o', self.prefix]
        self.main(cmd)
        table = self.lines('divergence-000.csv')
        sidecar = os.path.join(self.prefix, 'divergence-000.json')
        out = os.path.join(self.prefix, 'again')
        self.main(['divergence', '-c', sidecar, '-o', out])
        self.assertEqual(
            tests.read(os.path.join(out, 'divergence-000.csv')).splitlines(),
            table)

    def test_main_failure(self):
        """Testing: tdeflect rays -c escape.yml."""
        cmd = ['rays', '-c', tests.config('escape'), '-o', self.prefix]
        self.main(cmd, 2, '1 sweep point(s) failed.')
        self.assertEqual(os.listdir(self.prefix), [])
