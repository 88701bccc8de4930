# -*- encoding: utf-8 -*-
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.
#
"""Probe deflection and focusing in tripod EIT vapors."""

import tripod_deflect.commands  # noqa
import tripod_deflect.profiles  # noqa
from tripod_deflect.__about__ import (__author__, __copyright__, __email__,
                                      __license__, __summary__, __title__,
                                      __uri__, __version__)
from tripod_deflect.core import get_commands, get_profiles

__all__ = [
    '__title__', '__summary__', '__uri__', '__version__', '__author__',
    '__email__', '__license__', '__copyright__'
]


class RegistryError(Exception):
    """Errors related to the registries. Most likely a user typo."""


class _Registry(set):
    """Name based access to a set of registered classes."""
    kind = ''

    def get(self, name):
        """Return a registered class from its name or its classname."""
        for cls in self:
            if name in (cls.name, cls.__name__):
                return cls
        raise RegistryError('Unknown %s: %s' % (self.kind, name))

    def names(self):
        """Return the sorted list of the registered names."""
        return sorted(cls.name for cls in self)

    def classes(self):
        """Return the registered classes sorted by name."""
        return sorted(self, key=lambda cls: cls.name)


class Profiles(_Registry):
    """Provide an interface to the control beam profile classes."""
    kind = 'control beam profile'

    def __init__(self):
        super(Profiles, self).__init__(get_profiles())


class Commands(_Registry):
    """Provide an interface to the simulation command classes."""
    kind = 'command'

    def __init__(self):
        super(Commands, self).__init__(get_commands())
