#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# lir_lab documentation build configuration file.

import os
import sys

cwd = os.getcwd()
project_root = os.path.dirname(cwd)
sys.path.insert(0, project_root)

import lir_lab  # noqa: E402

extensions = ['sphinx.ext.autodoc', 'sphinx.ext.napoleon',
              'sphinx.ext.viewcode', 'sphinx.ext.mathjax']
templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = u'lir_lab'
copyright = u"2026, The lir_lab Authors"

version = lir_lab.__version__
release = lir_lab.__version__

exclude_patterns = ['_build']
pygments_style = 'sphinx'

html_theme = 'sphinx_rtd_theme'
html_static_path = []
htmlhelp_basename = 'lir_labdoc'

latex_documents = [
    ('index', 'lir_lab.tex',
     u'lir_lab Documentation',
     u'The lir_lab Authors', 'manual'),
]

man_pages = [
    ('index', 'lir_lab',
     u'lir_lab Documentation',
     [u'The lir_lab Authors'], 1)
]
