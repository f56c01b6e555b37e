"""Exact coloring counts: homomorphisms from a presentation into a finite target.

A presentation is compiled once into a straight-line program of BRANCH,
SOLVE and CHECK instructions. The compile step simulates constraint
propagation symbolically: a relation with a single unknown generator that
occurs exactly once (as the head of a side, for quandles) determines it, so
only the remaining generators are branched on. The program is independent of
the target and runs in the compiled kernel when available.
"""
from __future__ import annotations

from array import array
from typing import NamedTuple

from .errors import BudgetExceeded, PresentationError
from .presentation import GROUP, Presentation
from .targets import FiniteTarget
from . import _kernel_py, _native

__all__ = ["count_colorings", "compile_program", "Program", "KERNEL", "COMPILER", "DEFAULT_BUDGET"]

_ckernel = _native.kernel
KERNEL = "cython" if _ckernel is not None else "python"
COMPILER = "python" if _native.compiler is _native.py_compiler else "cython"
DEFAULT_BUDGET = 50_000_000


class Program(NamedTuple):
    prog: array
    words: array
    terms: array
    nvars: int
    branches: int


def compile_program(p: Presentation) -> Program:
    """Compile ``p`` once; the result does not depend on the target."""
    return Program(*_native.compiler.compile_program(p.flavor == GROUP, len(p.generators),
                                                     p.relations))


def count_colorings(p: Presentation, t: FiniteTarget, budget: int = DEFAULT_BUDGET,
                    kernel: str | None = None) -> int:
    """Number of homomorphisms from the presented group/quandle ``p`` to ``t``.

    ``budget`` caps the number of search nodes; exceeding it raises
    :class:`BudgetExceeded`. ``kernel`` forces ``"python"`` or ``"cython"``.
    """
    if p.flavor != t.kind:
        raise PresentationError(f"cannot color a {p.flavor} presentation by a {t.kind}")
    if kernel is None:
        kernel = KERNEL
    if kernel == "cython" and _ckernel is None:
        raise PresentationError("compiled kernel is not available")
    impl = _ckernel.count if kernel == "cython" else _kernel_py.count
    prog = p.program
    if prog.nvars == 0:
        return 1
    mul, inv, qtab = t.kernel_arrays
    result = impl(prog.prog, prog.words, prog.terms, prog.nvars, t.order,
                  mul, inv, t.identity, qtab, budget)
    if result < 0:
        raise BudgetExceeded(f"coloring search exceeded {budget} nodes")
    return result
