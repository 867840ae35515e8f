"""Build script: compiles the optional speedup extension, falls back to pure Python."""
from __future__ import annotations

import sys

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools.extension import Extension

    ext_modules = cythonize(
        [
            Extension(
                "projcubes._speedups",
                sources=["src/projcubes/_speedups.pyx"],
                include_dirs=[numpy.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    sys.stderr.write(f"speedup extension skipped ({exc}); pure-Python kernels will be used\n")

setup(ext_modules=ext_modules)
