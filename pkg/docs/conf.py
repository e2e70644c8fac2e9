# Sphinx configuration for the laplimits documentation.

import os
import sys

sys.path.insert(0, os.path.abspath("../src"))

project = "laplimits"
author = "Emmanuel King Kasulani"
copyright = f"2026, {author}"
version = release = "0.1.0"

extensions = [
    "sphinx.ext.autodoc",
    "sphinx.ext.autosummary",
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
]

# Args:/Returns: sections
napoleon_google_docstring = True
napoleon_numpy_docstring = False

autodoc_typehints = "description"
autodoc_member_order = "bysource"
autoclass_content = "both"

language = "en"
exclude_patterns = ["_build"]

html_theme = "sphinx_rtd_theme"
