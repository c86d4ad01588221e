#!/usr/bin/env python
"""
PyHMT (Python Hilbert Module Toolkit)
"""
from setuptools import setup, find_packages
import re, io

__version__ = re.search(
    r'__version__\s*=\s*[\'"]([^\'"]*)[\'"]',
    io.open('pyhmt/__init__.py', encoding='utf_8_sig').read()
    ).group(1)

setup(name='PyHMT',
      version=__version__,
      description='Numerical workbench for Bohr-type identities and inequalities on Hilbert C*-modules',
      long_description=io.open('README.md', encoding='utf-8').read(),
      long_description_content_type='text/markdown',
      license='GNLv3',
      packages=find_packages(exclude=['tests']),
      install_requires=['numpy',
                        'scipy',
                        'pandas>=0.23.4',
                        'tqdm',
                        ],
      extras_require={'test': ['pytest', 'hypothesis']},
      scripts=['pyhmt/bin/pyhmt',
               ],
      classifiers=[
            'Development Status :: 3 - Alpha',
            'Intended Audience :: Science/Research',
            'Topic :: Scientific/Engineering :: Mathematics',
            'Natural Language :: English',
            'Programming Language :: Python :: 3',
      ],
      keywords='Hilbert C*-module Bohr inequality operator inequality'
     )
