"""Build script for the optional compiled row-reduction kernel.

The extension is best-effort: if Cython or a C compiler is missing the
package still installs and falls back to the pure-Python kernel at import.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("siltglue._kernel._rref_cy", ["src/siltglue/_kernel/_rref_cy.pyx"])],
        language_level=3,
    )
except Exception:
    ext_modules = []

setup(ext_modules=ext_modules)
