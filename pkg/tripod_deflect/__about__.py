# -*- encoding: utf-8 -*-
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.
#

__all__ = [
    '__title__', '__summary__', '__uri__', '__version__', '__author__',
    '__email__', '__license__', '__copyright__'
]

__title__ = 'tripod-deflect'
__summary__ = ('Steady-state response, deflection and focusing of a weak '
               'probe in a four-level tripod vapor under a structured '
               'control beam.')
__uri__ = 'https://github.com/tripod-deflect/tripod-deflect'

__version__ = '1.0'

__author__ = 'tripod-deflect developers'
__email__ = 'tripod-deflect@users.noreply.github.com'

__license__ = 'GPL3'
__copyright__ = 'Copyright 2020 {}'.format(__author__)
