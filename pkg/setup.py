"""Build script for the optional compiled fit kernel.

The package is pure Python except for ``postselect._fitkernel``, a Cython
translation of the pattern-search kernel in ``postselect._fitkernel_py``.
If Cython or a C compiler is unavailable the build falls back to the pure
Python implementation, which is selected automatically at import time.
"""

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    extensions = cythonize(
        [
            Extension(
                "postselect._fitkernel",
                ["src/postselect/_fitkernel.pyx"],
                include_dirs=[numpy.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
