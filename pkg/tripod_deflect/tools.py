# -*- encoding: utf-8 -*-
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.
#

import ast
import logging
import math
import operator
import sys

from tripod_deflect.errors import ParseError

_OPERATORS = {
    ast.Add: operator.add,
    ast.Sub: operator.sub,
    ast.Mult: operator.mul,
    ast.Div: operator.truediv,
    ast.Pow: operator.pow,
    ast.USub: operator.neg,
    ast.UAdd: operator.pos,
}
_NAMES = {'pi': math.pi, 'e': math.e}


def _evaluate(node):
    """Evaluate an arithmetic expression tree."""
    if isinstance(node, ast.Expression):
        return _evaluate(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)):
        return node.value
    if isinstance(node, ast.Name) and node.id in _NAMES:
        return _NAMES[node.id]
    if isinstance(node, ast.BinOp) and type(node.op) in _OPERATORS:
        return _OPERATORS[type(node.op)](_evaluate(node.left),
                                         _evaluate(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _OPERATORS:
        return _OPERATORS[type(node.op)](_evaluate(node.operand))
    raise ValueError('unsupported expression')


def number(value, field=''):
    """Read a number, or an arithmetic expression such as ``pi/6``."""
    if isinstance(value, bool):
        raise ParseError('expected a number, got %r' % value, field=field)
    if isinstance(value, (int, float)):
        return float(value)
    if isinstance(value, str):
        try:
            return float(_evaluate(ast.parse(value.strip(), mode='eval')))
        except (SyntaxError, ValueError, TypeError, ZeroDivisionError,
                OverflowError):
            pass
    raise ParseError('expected a number, got %r' % (value,), field=field)


def merge(base, other):
    """Deep merge ``other`` into a copy of ``base``."""
    merged = dict(base)
    for key, value in other.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = merge(merged[key], value)
        else:
            merged[key] = value
    return merged


class MessageHandler(logging.Handler):
    """Forward library log records to the :class:`Config` messages."""

    def __init__(self, conf):
        super(MessageHandler, self).__init__()
        self.conf = conf

    def emit(self, record):
        msg = self.format(record)
        if record.levelno >= logging.WARNING:
            self.conf.warning(msg)
        elif record.levelno >= logging.INFO:
            self.conf.verbose(msg)
        else:
            self.conf.debug(msg)


class Config(dict):
    """Manage program options and output messages.

    **Order of precedence of the settings:**

    1. Program options,
    2. Config file,
    3. Preset the config file extends,
    4. Default values.

    :param int verb:
        Set the verbosity mode:

        - ``0`` No verbose output,
        - ``1`` Default verbose, enable :func:`~verbose`,
        - ``3`` Enable :func:`~debug`.
    :param bool quiet: If ``True`` suppress all non-error messages. Takes
        precedence over ``verbose``.

    """
    # Normal colors
    green = '\033[32m'
    yellow = '\033[33m'
    magenta = '\033[35m'
    end = '\033[0m'

    # Bold colors
    RED = '\033[1m\033[91m'
    GREEN = '\033[1m\033[92m'
    YELLOW = '\033[1m\033[93m'
    MAGENTA = '\033[1m\033[95m'
    BOLD = '\033[1m'

    logger = 'tripod_deflect'

    def __init__(self):
        defaults = {'out': '.', 'jobs': 1}
        super(Config, self).__init__(defaults)
        self.verb = 0
        self.quiet = False
        self.handler = None

    def verbosity(self, verbose=0, quiet=False):
        """Set program verbosity and route the library logs."""
        self.verb = verbose
        self.quiet = quiet
        if self.quiet:
            self.verb = 0

        logger = logging.getLogger(self.logger)
        for handler in list(logger.handlers):
            if isinstance(handler, MessageHandler):
                logger.removeHandler(handler)
        self.handler = MessageHandler(self)
        logger.addHandler(self.handler)
        logger.propagate = False
        if self.verb >= 3:
            logger.setLevel(logging.DEBUG)
        elif self.verb >= 1:
            logger.setLevel(logging.INFO)
        else:
            logger.setLevel(logging.WARNING)

    def merge(self, other):
        """Update the dictionary only if the value is not null."""
        for key, value in other.items():
            if value is not None:
                self[key] = value

    def overrides(self):
        """Config tree overrides given as program options."""
        tree = {}
        if self.get('steps') is not None:
            tree['grid'] = {'steps': self['steps']}
        if self.get('x0') is not None:
            tree['probe'] = {'x0': self['x0']}
        if self.get('mode') is not None:
            tree['mode'] = self['mode']
        return tree

    def verbose(self, title='', msg=''):
        """Verbose method, takes title and msg. msg can be empty."""
        if self.verb >= 1 and msg == '':
            out = "%s  .  %s%s%s%s" % (self.MAGENTA, self.end, self.magenta,
                                       title, self.end)
            print(out, file=sys.stdout)
        elif self.verb >= 1:
            out = "%s  .  %s%s%s: %s%s" % (self.MAGENTA, self.end,
                                           self.magenta, title, self.end, msg)
            print(out, file=sys.stdout)

    def debug(self, title='', msg=''):
        """Debug method."""
        if self.verb >= 3:
            self.verbose(title, msg)

    def message(self, msg=''):
        """Message method."""
        if not self.quiet:
            out = "%s  .  %s%s" % (self.BOLD, self.end, msg)
            print(out, file=sys.stdout)

    def echo(self, msg=''):
        """Echo a message after a tab."""
        if not self.quiet:
            print("\t%s" % msg, file=sys.stdout)

    def success(self, msg=''):
        """Success method."""
        if not self.quiet:
            out = "%s (*) %s%s%s%s" % (self.GREEN, self.end, self.green, msg,
                                       self.end)
            print(out, file=sys.stdout)

    def warning(self, msg=''):
        """Warning method."""
        if not self.quiet:
            out = "%s  w  %s%s%s%s" % (self.YELLOW, self.end, self.yellow, msg,
                                       self.end)
            print(out, file=sys.stdout)

    def error(self, msg=''):
        """Error method."""
        err = "%s [x] %s%sError: %s%s" % (self.RED, self.end, self.BOLD,
                                          self.end, msg)
        print(err, file=sys.stderr)

    def die(self, msg='', code=1):
        """Show an error and exit the program."""
        self.error(msg)
        sys.exit(code)
