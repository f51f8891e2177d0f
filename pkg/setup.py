# SPDX-License-Identifier: Apache-2.0
# SPDX-FileCopyrightText: © 2025- qscramble Developers and their Assignees

from __future__ import absolute_import, division, print_function
import os

from setuptools import find_packages, setup

with open("README.md", "r") as f:
    long_description = f.read()

# read version number
import importlib
spec = importlib.util.spec_from_file_location("version_module", "qscramble/version.py")
version_module = importlib.util.module_from_spec(spec)
spec.loader.exec_module(version_module)

_version = version_module.VERSION

PROJECT_PATH = os.path.dirname(os.path.abspath(__file__))

_numpyro_version_lower_constraint = '>=0.8.0'
_numpyro_version_optimistic_upper_constraint = ', < 2.0.0'

setup(
    name='qscramble',
    python_requires='>=3.8',
    version=_version,
    description='Statevector simulation of operator scrambling: Pauli-exponential circuits, Trotterized Ising evolution and interferometric OTOCs',
    packages=find_packages(include=['qscramble', 'qscramble.*']),
    author='qscramble Developers',
    install_requires=[
        f'numpyro[cpu] {_numpyro_version_lower_constraint}{_numpyro_version_optimistic_upper_constraint}',
        'jax >= 0.4.1',
        'numpy',
        'scipy',
        'pandas',
    ],
    extras_require={
        'examples': ['matplotlib'],
        'cpu': "",
        'cuda': "numpyro[cuda]"
    },
    entry_points={
        'console_scripts': ['qscramble=qscramble.cli:main'],
    },
    long_description=long_description,
    long_description_content_type='text/markdown',
    tests_require=[],
    test_suite='tests',
    keywords='quantum simulation statevector trotter otoc scrambling ising',
    classifiers=[
        'Intended Audience :: Developers',
        'Intended Audience :: Education',
        'Intended Audience :: Science/Research',
        'Operating System :: POSIX :: Linux',
        'Operating System :: MacOS :: MacOS X',
        'Programming Language :: Python :: 3'
    ],
)
