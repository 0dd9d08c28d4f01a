"""Build script: compiles the optional Monte Carlo kernel extension.

The package works without the extension (a NumPy fallback is selected at
import time), so any failure to compile is downgraded to a warning.
"""

import warnings

from setuptools import Extension, setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "mpdesign._kernels",
                ["src/mpdesign/_kernels.pyx"],
                include_dirs=[numpy.get_include()],
            )
        ],
        language_level=3,
    )
except ImportError as exc:  # pragma: no cover - build environment dependent
    warnings.warn(f"Cython unavailable ({exc}); building without compiled kernels")

setup(ext_modules=ext_modules)
