#!/usr/bin/env python3
# tripod deflect - Probe deflection in tripod EIT vapors
# Copyright (C) 2020 tripod-deflect developers.

from pathlib import Path

from setuptools import setup

about = dict()
with Path('tripod_deflect', '__about__.py').open() as file:
    exec(file.read(), about)  # nosec pylint: disable=exec-used

with open('README.md') as file:
    long_description = file.read()

setup(
    name=about['__title__'],
    version=about['__version__'],
    author=about['__author__'],
    author_email=about['__email__'],
    description=about['__summary__'],
    long_description=long_description,
    long_description_content_type='text/markdown',
    license=about['__license__'],
    url=about['__uri__'],
    packages=[
        'tripod_deflect',
        'tripod_deflect.commands',
        'tripod_deflect.formats',
        'tripod_deflect.profiles',
    ],
    package_data={'tripod_deflect': ['presets/*.yml']},
    entry_points={
        "console_scripts": [
            "tdeflect = tripod_deflect.__main__:main",
        ]
    },
    install_requires=['pyaml', 'numpy', 'scipy>=1.6'],
    extras_require={
        'tests': ['green', 'coverage'],
        'lint': ['prospector', 'bandit'],
    },
    python_requires='>=3.8',
    zip_safe=False,
    keywords=[
        'eit', 'tripod', 'optical-bloch-equations', 'ray-tracing',
        'laguerre-gauss', 'atomic-vapor', 'simulation'
    ],
    classifiers=[
        'Development Status :: 4 - Beta',
        'Environment :: Console',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU General'
        ' Public License v3 or later (GPLv3+)',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Topic :: Scientific/Engineering :: Physics',
    ],
)
