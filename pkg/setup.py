"""Build script for the optional compiled kernel.

The package is fully functional without the extension; if Cython (or a C
compiler) is unavailable the build silently falls back to the pure-Python
kernels selected at import time.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "branchmono._kernels._fast",
                ["src/branchmono/_kernels/_fast.pyx"],
            )
        ],
        language_level="3",
    )

setup(ext_modules=ext_modules)
