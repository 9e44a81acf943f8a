"""Build script. The compiled stepper core is optional: if Cython or a C
compiler is unavailable the package installs anyway and falls back to the
pure-NumPy twin at import time."""

from setuptools import setup

try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/qcfd/_speedups.pyx"],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
    for ext in ext_modules:
        ext.include_dirs.append(numpy.get_include())
        ext.extra_compile_args = ["-O3"]
except Exception:  # pragma: no cover - build-environment dependent
    ext_modules = []

setup(ext_modules=ext_modules)
