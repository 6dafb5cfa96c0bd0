"""Build script: compiles the optional Cython kernel core.

The package works without the extension (a pure-Python fallback is selected
at import time), so a missing Cython or C compiler only costs speed.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "flexmech._notchcore",
                ["src/flexmech/_notchcore.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": 3, "cdivision": True, "boundscheck": False},
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
