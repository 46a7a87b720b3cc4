"""Build script for the optional compiled gate kernels.

The package works without the extension: ``qlstm_forecast.kernels`` falls
back to the pure-numpy implementation when the compiled module is missing,
so a failed extension build degrades performance, not functionality.
"""

import os
import sys

from setuptools import setup

ext_modules = []
if os.environ.get("QLSTM_FORECAST_SKIP_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/qlstm_forecast/_gatekernels.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        print(
            "qlstm-forecast: Cython not available, building without the "
            "compiled gate kernels (pure-python fallback will be used)",
            file=sys.stderr,
        )

setup(ext_modules=ext_modules)
