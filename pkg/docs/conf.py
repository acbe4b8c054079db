# -*- coding: utf-8 -*-
"""
Sphinx configuration for the galois_fiber docs
"""
import os
import sys

sys.path.insert(0, os.path.abspath('..'))

from galois_fiber import __version__  # noqa: E402

project = 'galois_fiber'
copyright = "2026, Heather B Mayes"
author = 'Heather B Mayes'
version = release = __version__

extensions = ['sphinx.ext.autodoc',
              'sphinx.ext.mathjax',
              ]
master_doc = 'index'
source_suffix = '.rst'
exclude_patterns = ['_build']

html_theme = 'sphinx_rtd_theme'
