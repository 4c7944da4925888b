"""Setup coboson package."""

# License: MIT

import sys

from setuptools import setup, find_packages


DISTNAME = 'scikit-coboson'
DESCRIPTION = ('A Python package for the normalization factors of composite bosons '
               'and their bounds in terms of purity and the largest Schmidt coefficient.')
with open('README.rst') as f:
    LONG_DESCRIPTION = f.read()

import importlib.util
import os
import re

# Read the version and dependencies without importing coboson, whose
# runtime dependencies may not be installed yet.
_HERE = os.path.dirname(os.path.abspath(__file__))
with open(os.path.join(_HERE, 'coboson', '__init__.py')) as f:
    VERSION = re.search(r"^__version__ = ['\"]([^'\"]+)['\"]", f.read(), re.M).group(1)

_spec = importlib.util.spec_from_file_location(
    'min_dependencies', os.path.join(_HERE, 'coboson', '_build_utils', 'min_dependencies.py'))
min_deps = importlib.util.module_from_spec(_spec)
_spec.loader.exec_module(min_deps)

SETUPTOOLS_COMMANDS = set(['develop', 'release', 'bdist_egg', 'bdist_rpm',
                           'install_egg_info', 'build_sphinx', 'egg_info',
                           'easy_install', 'upload', 'bdist_wheel',
                           '--single-version-externally-managed'])

if SETUPTOOLS_COMMANDS.intersection(sys.argv):
    extra_setuptools_args = dict(zip_safe=False,
                                 include_package_data=True,
                                 extras_require={key: min_deps.tag_to_packages[key]
                                                 for key in ['docs', 'tests']})
else:
    extra_setuptools_args = dict()

LICENSE = 'MIT'
CLASSIFIERS = ['Intended Audience :: Science/Research',
               'Intended Audience :: Developers',
               'Programming Language :: Python',
               'Topic :: Scientific/Engineering :: Physics',
               'Operating System :: Microsoft :: Windows',
               'Operating System :: POSIX',
               'Operating System :: Unix',
               'Operating System :: MacOS',
               'Programming Language :: Python :: 3.8',
               'Programming Language :: Python :: 3.9',
               'Programming Language :: Python :: 3.10',
               'Programming Language :: Python :: 3.11']
PACKAGES = find_packages(exclude=['tests', 'tests.*', 'examples', 'examples.*'])


def setup_package():

    metadata = dict(name=DISTNAME,
                    description=DESCRIPTION,
                    long_description=LONG_DESCRIPTION,
                    long_description_content_type='text/x-rst',
                    version=VERSION,
                    license=LICENSE,
                    classifiers=CLASSIFIERS,
                    packages=PACKAGES,
                    python_requires='>=3.8',
                    install_requires=min_deps.tag_to_packages['install'],
                    entry_points={'console_scripts': ['coboson = coboson.cli:main']},
                    **extra_setuptools_args)

    setup(**metadata)

if __name__ == '__main__':
    setup_package()
