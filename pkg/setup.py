from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("ravensim.engine._kernel", ["src/ravensim/engine/_kernel.pyx"])],
        compiler_directives={"language_level": 3},
    )
except ImportError:
    # Pure-Python install still works; the engine falls back at import time.
    extensions = []

setup(ext_modules=extensions)
