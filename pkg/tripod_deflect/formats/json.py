# -*- encoding: utf-8 -*-
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.
#

import json

from tripod_deflect.core import Output


class JSON(Output):
    """JSON document, keys sorted for stable files."""
    format = 'json'
    extension = 'json'

    def write(self, data):
        """Write ``data`` as an indented JSON document."""
        json.dump(data, self.file, indent=2, sort_keys=True)
        self.file.write('\n')
