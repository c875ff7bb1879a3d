"""Build script.

The package ships an optional compiled extension (``matchcut._accel._core``)
holding the hot kernels: brute-force colouring scans, induced-subgraph search
and canonical-form computation.  The extension is a strict mirror of the pure
Python kernels in ``matchcut._accel._pure``; if Cython or a C compiler is
unavailable the build silently degrades to the pure fallback, which the
package selects automatically at import time.
"""

from __future__ import annotations

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/matchcut/_accel/_core.pyx"],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except Exception:  # pragma: no cover - build-environment dependent
    ext_modules = []

setup(ext_modules=ext_modules)
