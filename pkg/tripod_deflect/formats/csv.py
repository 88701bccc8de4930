# -*- encoding: utf-8 -*-
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.
#

import csv

from tripod_deflect.core import Output

DIGITS = 12


def fmt(value):
    """Locale independent decimal rendering with 12 significant digits."""
    value = float(value)
    if value == 0:
        value = 0.0
    return format(value, '.%dg' % DIGITS)


class CSV(Output):
    """Numeric table written as CSV, one header line then the rows.

    :param list columns: Column names.

    """
    format = 'csv'
    extension = 'csv'

    def __init__(self, prefix, columns):
        super(CSV, self).__init__(prefix)
        self.columns = list(columns)

    def write(self, data):
        """Write the rows of ``data``, an iterable of numeric tuples."""
        writer = csv.writer(self.file, lineterminator='\n')
        writer.writerow(self.columns)
        for row in data:
            if len(row) != len(self.columns):
                raise ValueError('row of %d values for %d columns.' %
                                 (len(row), len(self.columns)))
            writer.writerow([fmt(value) for value in row])
