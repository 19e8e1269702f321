#!/usr/bin/env python
#
#   Copyright (C) 2026 nclp developers
#
# This Program is free software; you can redistribute it and/or
# modify it under the terms of the GNU General Public
# License as published by the Free Software Foundation; either
# version 3 of the License, or (at your option) any later version.

import sys

if sys.version_info[0] < 3:
    print('nclp requires python version 3.  python version is', sys.version)
    exit(1)

try:
    from setuptools import setup, find_packages
    packages = find_packages(exclude=['tests', 'examples', 'examples.*'])
except ImportError:
    from distutils.core import setup
    packages = ['nclp', 'nclp.suites']

from nclp import version

setup (name = 'nclp',
       version = version.strversion,
       description = 'noncommutative L_p norms, interpolation couples and copy systems at finite dimension',
       license = 'GPLv3',
       author='nclp developers',
       packages=packages,
       python_requires='>=3.8',
       install_requires=['numpy', 'scipy', 'ujson', 'sympy'],
       extras_require={'test': ['pytest', 'hypothesis']},
       entry_points={
           'console_scripts': [
               'nclp=nclp.cli:main',
               ]
        }
       )
