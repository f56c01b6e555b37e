import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("TWISTLINK_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [Extension("twistlink._kernel", ["src/twistlink/_kernel.pyx"]),
             # the plain-Python compiler is also built as an extension of its own
             Extension("twistlink._compiler_c", ["src/twistlink/_compiler.py"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
