# -*- coding: utf-8 -*-
#
# bbqp-toolkit documentation build configuration file.
#
# This file is execfile()d with the current directory set to its containing
# dir. Values that are left out keep the Sphinx defaults.

import os, sys

sys.path.append(os.path.abspath('.'))
sys.path.append(os.path.abspath('..'))
sys.path.append(os.path.join(os.path.abspath('.'), '_ext'))

# -- General configuration -----------------------------------------------------

extensions = ['bbqp_docs', 'sphinx.ext.intersphinx']
intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'django': ('https://docs.djangoproject.com/en/stable/',
               'https://docs.djangoproject.com/en/stable/_objects/'),
    'numpy': ('https://numpy.org/doc/stable/', None),
}

templates_path = ['templates']

source_suffix = '.rst'

source_encoding = 'utf-8'

master_doc = 'index'

project = u'bbqp-toolkit'
copyright = u'bbqp-toolkit contributors'

# The short X.Y version.
version = '0.1'
# The full version, including alpha/beta/rc tags.
release = '0.1.0'

language = "en"

exclude_trees = ['build']

add_function_parentheses = True

pygments_style = 'sphinx'


# -- Options for HTML output ---------------------------------------------------

html_theme = 'default'

html_static_path = ['static']

htmlhelp_basename = 'bbqptoolkitdoc'


# -- Options for LaTeX output --------------------------------------------------

latex_paper_size = 'a4'

latex_documents = [
  ('index', 'bbqp-toolkit.tex', u'bbqp-toolkit',
   u'bbqp-toolkit contributors', 'manual'),
]
