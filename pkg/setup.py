import os

from setuptools import setup

ext_modules = []
if os.environ.get("HOOPFORGE_NO_EXTENSION") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/hoopforge/_kernels_cy.pyx"], language_level=3
        )
    except ImportError:
        # Pure-Python fallback is selected at import time when the
        # extension is missing; the package stays installable.
        ext_modules = []

setup(ext_modules=ext_modules)
