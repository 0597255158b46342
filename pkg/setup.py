#!/usr/bin/env python
# -*- coding: utf-8 -*-

from setuptools import setup

import nvmag.version

packages = ['nvmag', 'nvmag/ext']

setup(name='nvmag',
      packages=packages,
      version=nvmag.version.version_str,
      description='NV-ensemble vector magnetometry (ODMR simulation, fit '
                  'and cone reconstruction)',
      author='nvmag contributors',
      keywords=['NV center', 'ODMR', 'magnetometry', 'diamond', 'waveguide'],
      license='FreeBSD and LGPLv3+',
      python_requires='>=3.6',
      install_requires=['lxml', 'numpy', 'scipy'],
      entry_points={'console_scripts': ['nvmag = nvmag.__main__:main']},
      classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: BSD License',
        'License :: OSI Approved :: GNU Lesser General Public License v3 ' +
        'or later (LGPLv3+)',
        'Natural Language :: English',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering',
        'Topic :: Scientific/Engineering :: Physics',
        ],
      test_suite="tests",
      long_description='''\
nvmag
=====

This module simulates CW-ODMR spectra of nitrogen-vacancy ensembles in
diamond, fits them with multi-Lorentzian models and reconstructs the magnetic
field vector from the resonance pairs of three NV orientations. Results are
written as XML reports.

It is licensed under the terms of both, the FreeBSD license and the LGPLv3+.
Choose the one which is more convenient for you. For more details have a look
at license.bsd and license.lgpl.
''')
