# -*- encoding: utf-8 -*-
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.
#

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from typing import Dict, List

from tripod_deflect.core import Mode


@dataclass
class Result:
    """Output of a command at one sweep point.

    :param list rows: Numeric rows of the CSV table.
    :param dict attachments: Extra JSON documents, by file suffix.
    :param dict metadata: Extra sidecar entries.

    """
    rows: List = field(default_factory=list)
    attachments: Dict = field(default_factory=dict)
    metadata: Dict = field(default_factory=dict)


class Command(ABC):
    """Interface for the simulation commands.

    A command computes one table per sweep point of an experiment.

    :param str name: Name of the command on the command line.
    :param str description: One line description.
    :param tuple columns: Column names of the table.
    :param Mode mode: Ray model used when the configuration sets none.

    """
    name = ''
    description = ''
    columns = ()
    mode = Mode.FIXED_LINE

    def __init__(self, point):
        """Command initialisation.

        :param ExperimentConfig point: Resolved configuration of one sweep
            point.

        """
        self.point = point
        super(Command, self).__init__()

    @property
    def ray_mode(self):
        """Ray model of this run."""
        if self.point.mode is None:
            return self.mode
        return self.point.mode

    @abstractmethod
    def compute(self):
        """Run the computation and return a :class:`Result`."""

    @classmethod
    def usage(cls):
        """Get the command usage."""
        return '  Columns: %s' % ', '.join(cls.columns)
