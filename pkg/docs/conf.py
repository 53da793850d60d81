# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder.
# http://www.sphinx-doc.org/en/master/config

import os
import sys
import datetime
now = datetime.datetime.now()
sys.path.insert(0, os.path.abspath('..'))

# -- Project information -----------------------------------------------------

project = 'cvchain'
copyright = '{}, cvchain developers'.format(str(now.year))
author = 'cvchain developers'

release = ''
version = ''

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.doctest',
    'sphinx.ext.todo',
    'sphinx.ext.coverage',
    'sphinx.ext.imgmath',
    'sphinx.ext.viewcode',
    'sphinxcontrib.fulltoc',
    'sphinx.ext.napoleon',
    'sphinx_click.ext'
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'
language = 'en'
exclude_patterns = ['_build', 'Thumbs.db', '.DS_Store', 'README.md']
pygments_style = 'sphinx'

# -- Options for HTML output -------------------------------------------------

import sphinx_bootstrap_theme

html_theme = 'bootstrap'
html_theme_path = sphinx_bootstrap_theme.get_html_theme_path()
html_theme_options = {
    'navbar_title': 'cvchain',
    'navbar_site_name': 'Modules',
    'navbar_links': [
        ('CLI Docs', 'cli/index'),
    ],
    'navbar_sidebarrel': False,
    'navbar_pagenav': True,
    'navbar_pagenav_name': 'Page',
    'globaltoc_depth': -1,
    'globaltoc_includehidden': 'true',
    'navbar_fixed_top': 'true',
    'source_link_position': 'footer',
    'bootswatch_theme': 'spacelab',
    'bootstrap_version': '3',
}

html_sidebars = {'**': ['localtoc.html']}
htmlhelp_basename = 'cvchaindoc'

# -- Extension configuration -------------------------------------------------

autodoc_member_order = 'groupwise'
todo_include_todos = True
