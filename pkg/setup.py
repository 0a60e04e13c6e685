"""Build script: compiles the optional fast kernels.

The package is fully functional without the extension (a NumPy fallback is
selected at import time), so any failure to build it is non-fatal.  Set
BCIPHS_NO_EXT=1 to skip the compilation step entirely.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("BCIPHS_NO_EXT"):
    try:
        import numpy as np
        from Cython.Build import cythonize
        from setuptools.extension import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "bciphs._kernels_cy",
                    ["src/bciphs/_kernels_cy.pyx"],
                    include_dirs=[np.get_include()],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except Exception as exc:  # pragma: no cover - depends on toolchain
        print(f"bciphs: skipping compiled kernels ({exc}); pure NumPy fallback will be used")
        ext_modules = []

setup(ext_modules=ext_modules)
