"""Build hook for the optional compiled core.

The package works without the extension (a pure-Python twin is selected at
import time); building it just makes the quotient kernels faster.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("freemonoid._core", ["src/freemonoid/_core.pyx"])],
        language_level=3,
    )
except ImportError:  # no Cython around: ship pure
    extensions = []

setup(ext_modules=extensions)
