#!/usr/bin/env python3
# -*- coding: utf-8 -*
# tripod deflect - Probe deflection in tripod EIT vapors
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

import sys
import traceback
from argparse import ArgumentParser, RawDescriptionHelpFormatter

import pyaml

from tripod_deflect import Commands, Profiles, RegistryError, __version__
from tripod_deflect.core import Mode
from tripod_deflect.errors import ConfigError, NumericalError, WrongFamily
from tripod_deflect.harness import load_config, presets, run
from tripod_deflect.tools import Config

COMMANDS = Commands()
SHOW = 'config'


class ArgParser(ArgumentParser):
    """Manages argument parsing and adds some defaults."""

    def __init__(self):
        prog = 'tdeflect'
        description = """
  Simulate the deflection, divergence and focusing of the circular components
  of a weak probe in a tripod EIT vapor driven by a tilted, structured control
  beam. Results are written as CSV tables with JSON metadata sidecars."""

        super(ArgParser, self).__init__(
            prog=prog,
            description=description,
            formatter_class=RawDescriptionHelpFormatter,
            epilog="Exit codes: 0 success, 1 configuration error, "
                   "2 numerical failure.",
            add_help=False)
        self.add_arguments()

    def add_arguments(self):
        """Set arguments for `tdeflect`."""
        cmdarg = self.add_argument_group(title='Simulation')
        cmdarg.add_argument(
            'command', type=str, nargs='?', default='',
            help='Command to run, can be: %s.' %
            ', '.join(COMMANDS.names() + [SHOW]))

        common = self.add_argument_group(title='Common optional arguments')
        common.add_argument('-c', '--config', action='store', default='',
                            metavar='path',
                            help='Experiment configuration file or result '
                                 'sidecar.')
        common.add_argument('-p', '--preset', action='store', default='',
                            help='Shipped preset, can be: %s.' %
                            ', '.join(presets()))
        common.add_argument('-o', '--out', action='store', default='.',
                            metavar='dir', help="Output directory. "
                                                "Default: '.'")

        extra = self.add_argument_group(title='Extra optional arguments')
        extra.add_argument('--steps', type=int, metavar='N',
                           help='Number of intervals along the cell.')
        extra.add_argument('--mode', choices=[m.value for m in Mode],
                           help='Ray model along the cell.')
        extra.add_argument('--x0', type=float, metavar='cm',
                           help='Probe transverse offset.')
        extra.add_argument('-j', '--jobs', type=int, default=1, metavar='N',
                           help='Number of sweep points run in parallel.')

        usage = self.add_argument_group(
            title='Help related optional arguments')
        usage.add_argument('-l', '--list', action='store_true',
                           help='List the commands and beam profiles.')
        usage.add_argument('-h', '--help', action='store_true',
                           help='Show this help message and exit.')
        usage.add_argument('-V', '--version', action='version',
                           version='%(prog)s ' + __version__,
                           help='Show the program version and exit.')
        group = usage.add_mutually_exclusive_group()
        group.add_argument('-v', '--verbose', action='count', default=0,
                           help='Set verbosity level, '
                                'can be used more than once.')
        group.add_argument('-q', '--quiet', action='store_true',
                           help='Be quiet.')

    def parse_args(self, args=None, namespace=None):
        """Parse tdeflect arguments & print help."""
        if args is None:
            args = sys.argv[1:]

        arg = vars(super(ArgParser, self).parse_args(args, namespace))
        arg['prog'] = self.prog
        if arg['help']:
            if arg['command'] in COMMANDS.names():
                self.print_help_command(arg['command'])
            else:
                self.print_help()
            sys.exit(0)
        return arg

    def print_help_command(self, name):
        """Print command usage."""
        cmd = COMMANDS.get(name)
        print('Usage: %s %s --config path [options]\n' % (self.prog, name))
        print('%s.' % cmd.description)
        print(cmd.usage())
        print('  Default mode: %s' % cmd.mode.value)


def setup():
    """Read progam arguments, configuration & sanity checks."""
    conf = Config()
    parser = ArgParser()
    arg = parser.parse_args()
    conf.verbosity(arg['verbose'], arg['quiet'])
    conf.merge(arg)

    if conf['list']:
        listcommands(conf)

    if conf['command'] == '':
        conf.die("command not present.")

    if conf['command'] not in COMMANDS.names() + [SHOW]:
        conf.die("%s is not a supported command." % conf['command'])

    if not conf['config'] and not conf['preset']:
        conf.die("no configuration file nor preset given.")

    if conf['jobs'] < 1:
        conf.die("the number of jobs must be at least 1.")
    return conf


def listcommands(conf):
    """List the supported commands and beam profiles."""
    if conf.quiet:
        print('\n'.join(COMMANDS.names()))
        sys.exit(0)

    conf.success("The %d supported commands are:" % len(COMMANDS))
    padding = len(max(COMMANDS.names(), key=len)) + 1
    for cmd in COMMANDS.classes():
        conf.message(conf.BOLD + cmd.name.ljust(padding) + conf.end +
                     cmd.description)
    profiles = Profiles()
    conf.success("The %d control beam profiles are:" % len(profiles))
    for profile in profiles.classes():
        conf.message(conf.BOLD + profile.name.ljust(padding) + conf.end +
                     profile.description)
    conf.success("The presets are: %s" % ', '.join(presets()))
    sys.exit(0)


def loadconfig(conf):
    """Load and resolve the experiment configuration."""
    try:
        config = load_config(conf['config'] or None, conf['preset'] or None,
                             conf.overrides())
    except (ConfigError, WrongFamily) as error:
        conf.debug(traceback.format_exc())
        conf.die(error)
    conf.verbose("Experiment", config.name)
    return config


def showconfig(conf, config):
    """Print the resolved configuration of every sweep point."""
    try:
        for index, label, point in config.points():
            conf.message("Sweep point %d %s" % (index, label or ''))
            print(pyaml.dump(point.tree))
    except ConfigError as error:
        conf.die(error)


def simulate(conf, config):
    """Run the command over the sweep."""
    try:
        return run(config, conf['command'], conf['out'], conf['jobs'])
    except NumericalError as error:
        conf.debug(traceback.format_exc())
        conf.die(error, 2)
    except (ConfigError, RegistryError, WrongFamily, OSError) as error:
        conf.debug(traceback.format_exc())
        conf.die(error)


def report(conf, config, result):
    """Print final report."""
    conf.success("Command %s run for %s" % (conf['command'], config.name))
    conf.message("Results written to: %s" % conf['out'])
    conf.message("Number of files written: %d" % len(result.written))
    for path in result.written:
        conf.echo(path)
    if result.failures:
        for index, label, error in result.failures:
            conf.error("sweep point %d %s: %s" % (index, label, error))
        conf.die("%d sweep point(s) failed." % len(result.failures), 2)


def main():
    """`tdeflect` main."""
    conf = setup()
    config = loadconfig(conf)
    if conf['command'] == SHOW:
        showconfig(conf, config)
        return
    result = simulate(conf, config)
    report(conf, config, result)


if __name__ == "__main__":
    main()
