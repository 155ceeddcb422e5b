"""Build script for the compiled kernel extension.

The package works without the extension (a pure-Python fallback is selected
at import time), but the Cython core speeds up the series/polynomial
convolutions that dominate solve time.
"""

from setuptools import Extension, setup
from Cython.Build import cythonize

ext_modules = cythonize(
    [
        Extension(
            "hpm_bvp._kernels._fastcore",
            sources=["src/hpm_bvp/_kernels/_fastcore.pyx"],
            language="c++",
        )
    ],
    compiler_directives={
        "language_level": "3",
        "boundscheck": False,
        "wraparound": False,
        "cdivision": True,
    },
)

setup(ext_modules=ext_modules)
