# Sphinx configuration of the scikit-coboson documentation.

import datetime
import os
import sys

import guzzle_sphinx_theme
import sphinx

from packaging.version import parse
from sphinx.errors import VersionRequirementError

sys.path.insert(0, os.path.abspath(os.path.join('..', '..')))

import coboson


project = 'Scikit-coboson'
author = 'The scikit-coboson developers'
copyright = '%s, %s (MIT License)' % (datetime.date.today().year, author)

# The napoleon extension ships with sphinx from 1.3 on.
needs_sphinx = '1.3'
if parse(sphinx.__version__) < parse(needs_sphinx):
    raise VersionRequirementError('Building the coboson documentation needs '
                                  'sphinx >= %s, but %s is installed.'
                                  % (needs_sphinx, sphinx.__version__))

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.autosummary',
              'sphinx.ext.mathjax',
              'sphinx.ext.napoleon',
              'sphinx.ext.viewcode',
              'guzzle_sphinx_theme']

# Record classes document their fields in the class docstring, and the
# private helpers of coboson.utils have pages of their own.
autodoc_default_options = {'members': True,
                           'show-inheritance': True,
                           'member-order': 'bysource',
                           'private-members': True}
autodoc_typehints = 'none'
autosummary_generate = True

napoleon_numpy_docstring = True
napoleon_google_docstring = False
napoleon_use_rtype = False

release_version = parse(coboson.__version__)
version = '%s.%s' % (release_version.major, release_version.minor)
release = release_version.base_version

templates_path = ['_templates']
exclude_patterns = ['_build']

html_theme_path = guzzle_sphinx_theme.html_theme_path()
html_theme = 'guzzle_sphinx_theme'
html_theme_options = {'project_nav_name': 'Scikit-coboson'}
html_sidebars = {'**': ['logo-text.html', 'globaltoc.html', 'searchbox.html']}
html_static_path = ['_static']

# The JSON schemas of the command line outputs are published as is.
html_extra_path = ['schemas']
