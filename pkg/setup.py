"""Build glue for the optional compiled RK4 kernel.

The package works without the extension (a numpy fallback is selected at
import time), so the Cython build is best-effort: no Cython means a pure
Python install.
"""

from setuptools import Extension, setup

try:
    import numpy as np
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "atomcavity._kernel",
                ["src/atomcavity/_kernel.pyx"],
                include_dirs=[np.get_include()],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                extra_compile_args=["-O3"],
            )
        ],
        language_level=3,
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
