#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# FT-Offload-Sim documentation build configuration file.
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys
sys.path.insert(0, os.path.abspath('..'))


# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
]

templates_path = ['_templates']

source_suffix = '.rst'

master_doc = 'index'

project = 'FT-Offload-Sim'
copyright = '2024, FT-Offload-Sim contributors'
author = 'FT-Offload-Sim contributors'

version = '0.1'
release = '0.1.0'

language = 'en'

exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store']

pygments_style = 'sphinx'

todo_include_todos = False

autodoc_member_order = 'bysource'


# -- Options for HTML output ----------------------------------------------

html_theme = 'alabaster'

html_theme_options = {
    'show_related': True,
    'page_width': '1080px',
    'fixed_sidebar': True,
    'code_font_size': '0.8em'
}

html_static_path = []

htmlhelp_basename = 'ft-offload-simdoc'


# -- Options for LaTeX output ---------------------------------------------

latex_documents = [
    (master_doc, 'ft-offload-sim.tex', 'FT-Offload-Sim Documentation',
     author, 'manual'),
]


# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'ft-offload', 'FT-Offload-Sim Documentation',
     [author], 1)
]
