"""Build script: compiles the optional exact-arithmetic kernel extension.

The package works without the extension (a pure-Python twin of the kernels
is selected at import time), so a failed cythonization is not fatal for
source installs without Cython.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("tau2._kernels", ["src/tau2/_kernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
