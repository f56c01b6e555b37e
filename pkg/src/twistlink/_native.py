"""Import-time choice between compiled extensions and their pure-Python twins.

Setting ``TWISTLINK_PURE_PYTHON`` to a non-empty value forces the Python
versions even when the extensions are built.
"""
import os

from . import _compiler as py_compiler

PURE_PYTHON = bool(os.environ.get("TWISTLINK_PURE_PYTHON"))

kernel = None
compiler = py_compiler
if not PURE_PYTHON:
    try:
        from . import _kernel as kernel
    except ImportError:
        kernel = None
    try:
        from . import _compiler_c as compiler
    except ImportError:
        compiler = py_compiler
