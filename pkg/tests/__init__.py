# -*- encoding: utf-8 -*-
# tripod deflect - test suite common resources
# Copyright (C) 2020 tripod-deflect developers.
#
#    This program is free software: you can redistribute it and/or modify
#    it under the terms of the GNU General Public License as published by
#    the Free Software Foundation, either version 3 of the License, or
#    (at your option) any later version.
#
#    This program is distributed in the hope that it will be useful,
#    but WITHOUT ANY WARRANTY; without even the implied warranty of
#    MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
#    GNU General Public License for more details.
#
#    You should have received a copy of the GNU General Public License
#    along with this program.  If not, see <http://www.gnu.org/licenses/>.
#
"""tripod-deflect test suite common resources.
It provides:
  - tests.tmp Path to the test temporary directory.
  - tests.tests Root path for tests
  - tests.assets Root path of tests assets.
  - tests.conf Dictionary with the test settings.
  - tests.Test() Base test class.
  - tests.config() Path of a configuration asset.
  - tests.random_params() Seeded random atomic configurations.
  - tests.read() Read a written file.
  - tests.captured() Context manager to capture stdout.
"""

import os
import sys
import shutil
import unittest
from io import StringIO
from contextlib import contextmanager

import numpy as np
import yaml

import tripod_deflect.__main__
from tripod_deflect.medium import AtomicParams, RabiTriple


tmp = '/tmp/tests/tripod-deflect/'  # nosec
tests = os.path.abspath('tests')
assets = os.path.join(tests, 'assets') + os.sep
with open(os.path.join(tests, 'tests.yml'), 'r') as cfile:
    conf = yaml.safe_load(cfile)


@contextmanager
def captured():
    """Context manager to capture stdout."""
    new_out, new_err = StringIO(), StringIO()
    old_out, old_err = sys.stdout, sys.stderr
    try:
        sys.stdout, sys.stderr = new_out, new_err
        yield sys.stdout, sys.stderr
    finally:
        sys.stdout, sys.stderr = old_out, old_err


def config(name):
    """Path of a configuration asset."""
    return os.path.join(assets, '%s.yml' % name)


def read(path, mode='r'):
    """Read a written file."""
    with open(path, mode) as file:
        return file.read()


def random_params(section, count=None):
    """Generate seeded random atomic configurations and Rabi triples.

    The probe is kept on two-photon resonance with the control so that the
    master equation oracle applies.
    """
    settings = conf[section]
    rng = np.random.default_rng(settings['seed'])
    low, high = settings['rabi']
    zlow, zhigh = settings['zeeman']
    for _ in range(count or settings['count']):
        magnitudes = rng.uniform(low, high, 3)
        phases = rng.uniform(0, 2 * np.pi, 3)
        g0, g1, g2 = magnitudes * np.exp(1j * phases)
        detuning = rng.uniform(-settings['detuning'], settings['detuning'])
        zeeman = rng.uniform(zlow, zhigh) * rng.choice([-1.0, 1.0])
        params = AtomicParams(delta_probe=detuning, delta_control=detuning,
                              delta_zeeman=zeeman)
        yield params, RabiTriple(complex(g0), complex(g1), complex(g2))


class Test(unittest.TestCase):
    """Common resources for all tests.

    :param str prefix: Path to the output directory of a test.

    """
    prefix = ''

    # Main related method

    def main(self, cmd, code=None, msg=''):
        """Call to the main function."""
        sys.argv = ['tdeflect']
        sys.argv.extend(cmd)
        if code is None:
            with captured():
                tripod_deflect.__main__.main()
        elif msg == '':
            with captured():
                with self.assertRaises(SystemExit) as cm:
                    tripod_deflect.__main__.main()
            self.assertEqual(cm.exception.code, code)
        else:
            with captured() as (out, err):
                with self.assertRaises(SystemExit) as cm:
                    tripod_deflect.__main__.main()
                if code == 0:
                    message = out.getvalue().strip()
                else:
                    message = err.getvalue().strip()
                self.assertIn(msg, message)
                self.assertEqual(cm.exception.code, code)

    # Output related method

    def _tmpdir(self, path=''):
        """Create a temporary test directory named after the testname."""
        self.prefix = os.path.join(tmp, self._testMethodName)

        # Re-initialize the test directory
        if os.path.isdir(self.prefix):
            shutil.rmtree(self.prefix, ignore_errors=True)
        os.makedirs(self.prefix, exist_ok=True)

        if path != '':
            self.prefix = os.path.join(self.prefix, path)
