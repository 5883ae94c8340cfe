""" visco2d's distribution and installation script. """

import ast
import re
import sys

if sys.version_info < (3, 9):
    raise RuntimeError("Python version 3.9+ required.")


# Prefer setuptools over distutils
try:
    from setuptools import setup
except ImportError:
    from distutils.core import setup


_version_re = re.compile(r'__version__\s+=\s+(.*)')

with open('visco2d/__init__.py', 'rb') as f:
    version = str(ast.literal_eval(_version_re.search(
        f.read().decode('utf-8')).group(1)))

setup(
    name="visco2d",
    version=version,
    description="Pseudo-spectral laboratory for 2D incompressible "
                "viscoelastic flow",
    long_description="See README.md.",
    author="The visco2d developers",
    packages=['visco2d'],
    install_requires=['numpy>=1.22', 'scipy>=1.12'],
    extras_require={'test': ['pytest', 'pytest-xdist']},
    entry_points={'console_scripts': ['visco2d = visco2d._cli:main']},
    license="LGPL",
    platforms='any',
    keywords="viscoelastic Oldroyd-B pseudo-spectral Navier-Stokes",
    python_requires='>=3.9',
    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'Topic :: Scientific/Engineering :: Physics',
        'License :: OSI Approved :: GNU Lesser General Public License v2 (LGPLv2)',
        'Operating System :: OS Independent',
        'Programming Language :: Python',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',
        'Programming Language :: Python :: 3 :: Only',
    ]
)
