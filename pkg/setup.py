"""Build script: compiles the optional extension kernel when Cython is
available; the package works without it via the pure-Python fallback."""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/monvar/_kernel.pyx", compiler_directives={"language_level": "3"}
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
