# -*- encoding: utf-8 -*-
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.
#


class TripodError(Exception):
    """Base class of all the tripod-deflect errors."""


class NumericalError(TripodError):
    """A numerical step failed, the result cannot be trusted."""


class SingularSystem(NumericalError):
    """The steady-state linear system is rank deficient."""


class NonConvergence(NumericalError):
    """The master equation did not relax to a steady state."""


class RayEscaped(NumericalError):
    """A traced ray left the configured transverse bounds."""


class WrongFamily(TripodError):
    """Operation not defined for this control beam profile family."""


class ConfigError(TripodError):
    """Experiment configuration cannot be used."""


class ParseError(ConfigError):
    """Experiment configuration cannot be read.

    :param int line: Line of the offending entry, when known.
    :param str field: Dotted path of the offending field, when known.

    """

    def __init__(self, msg, line=None, field=None):
        self.line = line
        self.field = field
        where = []
        if field:
            where.append("field '%s'" % field)
        if line is not None:
            where.append('line %d' % line)
        if where:
            msg = '%s (%s)' % (msg, ', '.join(where))
        super(ParseError, self).__init__(msg)


class ValidationError(ConfigError):
    """A configuration value violates a model invariant."""

    def __init__(self, invariant, msg=''):
        self.invariant = invariant
        text = 'invariant violated: %s' % invariant
        if msg:
            text += ' (%s)' % msg
        super(ValidationError, self).__init__(text)
