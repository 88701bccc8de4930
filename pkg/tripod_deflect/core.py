# -*- encoding: utf-8 -*-
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.
#

import io
import os
from abc import ABC, abstractmethod
from enum import Enum

_PROFILES = set()
_COMMANDS = set()


def register_profiles(*profiles):
    """Register new control beam profile(s)."""
    for cls in profiles:
        _PROFILES.add(cls)


def register_commands(*commands):
    """Register new command(s)."""
    for cls in commands:
        _COMMANDS.add(cls)


def get_profiles():
    """Return the registered control beam profile set."""
    return _PROFILES


def get_commands():
    """Return the registered command set."""
    return _COMMANDS


class Branch(Enum):
    """Circular component of the probe."""
    PLUS = 'plus'
    MINUS = 'minus'


class Mode(Enum):
    """Ray model used along the cell.

    - ``FIXED_LINE`` evaluates the index gradient on the undeflected line,
    - ``SELF_CONSISTENT`` evaluates it on the moving ray.

    """
    FIXED_LINE = 'fixed_line'
    SELF_CONSISTENT = 'self_consistent'


class Output(ABC):
    """Result file abstract asset.

    An output is written inside a context manager. If anything goes wrong
    before the context is left, the partial file is removed.

    :param str format: Name of the output format.
    :param str extension: File extension, without dot.
    :param str encoding: File encoding, default: ``utf-8``
    :param str mode: File writing mode, default: ``w``

    """
    format = ''
    extension = ''
    encoding = 'utf-8'
    mode = 'w'

    def __init__(self, prefix):
        """Output initialisation.

        :param prefix: Path of the file to write. It can also be a file
            object, in which case nothing is ever removed.

        """
        self.prefix = None
        self.file = None
        if isinstance(prefix, io.IOBase):
            self.file = prefix
        else:
            self.prefix = prefix
        super(Output, self).__init__()

    def open(self):
        """Open the file at ``prefix``, creating its directory."""
        if self.file is None:
            directory = os.path.dirname(self.prefix)
            if directory:
                os.makedirs(directory, exist_ok=True)
            self.file = open(self.prefix, self.mode, encoding=self.encoding,
                             newline='')

    def close(self):
        """Close the file."""
        if self.prefix is not None and isinstance(self.file, io.IOBase):
            self.file.close()

    def remove(self):
        """Remove a partially written file."""
        if self.prefix is not None and os.path.isfile(self.prefix):
            os.remove(self.prefix)

    @abstractmethod
    def write(self, data):
        """Write ``data`` to the file."""

    def __enter__(self):
        """Enter the context manager."""
        self.open()
        return self

    def __exit__(self, exc_type, exc_value, traceback):
        """Leave the context manager, cleaning up on failure."""
        self.close()
        if exc_type is not None:
            self.remove()
