"""Semi-arcs and twisted/upper/lower group and quandle presentations.

Semi-arc ``k`` of a component is the gap that follows symbol ``k``; the
symbol at position ``k`` therefore reads semi-arc ``k - 1`` (cyclically) on
the way in and semi-arc ``k`` on the way out. Semi-arcs are numbered
globally along the orientation, component by component.

At a crossing with over strand ``i`` (in) -> ``i'`` (out) and under strand
``j`` -> ``j'``::

    positive  upper: x_i' = x_i,   x_j' = x_i^-1 x_j x_i     (x_j * x_i)
              lower: y_j' = y_j,   y_i' = y_j^-1 y_i y_j     (y_i * y_j)
    negative  upper: x_i' = x_i,   x_j' = x_i x_j x_i^-1     (x_j *bar x_i)
              lower: y_j' = y_j,   y_i' = y_j y_i y_j^-1     (y_i *bar y_j)

and a bar from semi-arc ``i`` to ``i'`` gives ``x_i' = y_i``, ``y_i' = x_i``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import NamedTuple, Optional

from . import _native
from .errors import PresentationError
from .gauss import BAR, Symbol, TwistedCode

__all__ = ["SemiArc", "semi_arcs", "Presentation", "twisted_group", "upper_group",
           "lower_group", "twisted_quandle", "upper_quandle", "lower_quandle",
           "presentation", "parse_relation"]

GROUP = "group"
QUANDLE = "quandle"
STAR, STAR_BAR = 0, 1

Word = tuple  # tuple[(generator index, +1 | -1), ...]
Term = tuple  # (head generator, ((op, generator), ...))


class SemiArc(NamedTuple):
    index: int          # global, 0-based
    component: int
    position: int       # gap after this symbol position
    start: Optional[Symbol]  # symbol the semi-arc leaves (None on a bare circle)
    end: Optional[Symbol]    # symbol it runs into


def _gap_offsets(code: TwistedCode) -> list[int]:
    offsets = []
    total = 0
    for comp in code.components:
        offsets.append(total)
        total += max(len(comp), 1)
    offsets.append(total)
    return offsets


def semi_arcs(code: TwistedCode) -> list[SemiArc]:
    """Cut every component at each crossing pass and bar."""
    out = []
    offsets = _gap_offsets(code)
    for ci, comp in enumerate(code.components):
        n = len(comp)
        if n == 0:
            out.append(SemiArc(offsets[ci], ci, 0, None, None))
            continue
        for k in range(n):
            out.append(SemiArc(offsets[ci] + k, ci, k, comp[k], comp[(k + 1) % n]))
    return out


@dataclass(frozen=True, eq=False)
class Presentation:
    """Generators plus relations ``lhs = rhs``.

    Group relations pair two words (tuples of ``(generator, exponent)``).
    Quandle relations pair two left-normed terms ``(head, ((op, gen), ...))``
    where op 0 is ``*`` and op 1 is its dual.
    """
    flavor: str
    generators: tuple[str, ...]
    relations: tuple[tuple, ...]
    variant: str = "twisted"
    trusted: bool = field(default=False, repr=False)  # built here, index check skipped

    def __post_init__(self):
        if self.trusted:
            return
        n = len(self.generators)
        for lhs, rhs in self.relations:
            for g in self._gens_of(lhs) + self._gens_of(rhs):
                if not 0 <= g < n:
                    raise PresentationError(f"relation mentions undeclared generator {g}")

    def _gens_of(self, side) -> list[int]:
        if self.flavor == GROUP:
            return [g for g, _ in side]
        head, ops = side
        return [head] + [g for _, g in ops]

    def format_side(self, side) -> str:
        names = self.generators
        if self.flavor == GROUP:
            if not side:
                return "1"
            return " ".join(names[g] if e == 1 else f"{names[g]}^{e}" for g, e in side)
        head, ops = side
        parts = [names[head]]
        for op, g in ops:
            parts.append("*" if op == STAR else "*bar")
            parts.append(names[g])
        return " ".join(parts)

    def relation_strings(self) -> list[str]:
        return [f"{self.format_side(l)} = {self.format_side(r)}" for l, r in self.relations]

    def to_json(self) -> dict:
        return {"flavor": self.flavor, "variant": self.variant,
                "generators": list(self.generators),
                "relations": self.relation_strings()}

    @classmethod
    def from_json(cls, data: dict) -> "Presentation":
        gens = tuple(data["generators"])
        flavor = data["flavor"]
        rels = tuple(parse_relation(s, gens, flavor) for s in data["relations"])
        return cls(flavor, gens, rels, data.get("variant", "custom"))

    @cached_property
    def program(self):
        from .coloring import compile_program
        return compile_program(self)


_WORD_TOKEN = re.compile(r"^([A-Za-z_]\w*)(?:\^(-?\d+))?$")


def parse_relation(text: str, generators, flavor: str) -> tuple:
    """Inverse of :meth:`Presentation.relation_strings` for one relation."""
    index = {g: k for k, g in enumerate(generators)}
    if text.count("=") != 1:
        raise PresentationError(f"relation needs exactly one '=': {text!r}")
    sides = [s.split() for s in text.split("=")]

    def gen(tok):
        if tok not in index:
            raise PresentationError(f"unknown generator {tok!r}")
        return index[tok]

    if flavor == GROUP:
        out = []
        for toks in sides:
            word = []
            for tok in toks:
                if tok == "1":
                    continue
                m = _WORD_TOKEN.match(tok)
                if not m:
                    raise PresentationError(f"bad word token {tok!r}")
                e = int(m.group(2) or 1)
                word.extend([(gen(m.group(1)), 1 if e > 0 else -1)] * abs(e))
            out.append(tuple(word))
        return tuple(out)
    out = []
    for toks in sides:
        if not toks or len(toks) % 2 == 0:
            raise PresentationError(f"bad quandle term {' '.join(toks)!r}")
        head = gen(toks[0])
        ops = []
        for k in range(1, len(toks), 2):
            if toks[k] not in ("*", "*bar"):
                raise PresentationError(f"bad quandle operator {toks[k]!r}")
            ops.append((STAR if toks[k] == "*" else STAR_BAR, gen(toks[k + 1])))
        out.append((head, tuple(ops)))
    return tuple(out)


@lru_cache(maxsize=None)
def _names(letters: str, n: int) -> tuple[str, ...]:
    return tuple(f"{c}{k + 1}" for c in letters for k in range(n))


def _build(code: TwistedCode, flavor: str, variant: str) -> Presentation:
    n = _gap_offsets(code)[-1]
    if variant == "twisted":
        gens = _names("xy", n)
        shift = n
        flags = (True, True, True)
    elif variant in ("upper", "lower"):
        if code.bar_count:
            raise PresentationError(f"{variant} {flavor} needs a bar-free code")
        gens = _names("x" if variant == "upper" else "y", n)
        shift = 0
        flags = (variant == "upper", variant == "lower", False)
    else:
        raise PresentationError(f"unknown variant {variant!r}")
    builder = _native.compiler.group_relations if flavor == GROUP else \
        _native.compiler.quandle_relations
    rels = builder(code.components, *flags, shift)
    return Presentation(flavor, gens, rels, variant, trusted=True)


def twisted_group(code: TwistedCode) -> Presentation:
    return _build(code, GROUP, "twisted")


def upper_group(code: TwistedCode) -> Presentation:
    return _build(code, GROUP, "upper")


def lower_group(code: TwistedCode) -> Presentation:
    return _build(code, GROUP, "lower")


def twisted_quandle(code: TwistedCode) -> Presentation:
    return _build(code, QUANDLE, "twisted")


def upper_quandle(code: TwistedCode) -> Presentation:
    return _build(code, QUANDLE, "upper")


def lower_quandle(code: TwistedCode) -> Presentation:
    return _build(code, QUANDLE, "lower")


def presentation(code: TwistedCode, flavor: str, variant: str = "twisted") -> Presentation:
    if flavor not in (GROUP, QUANDLE):
        raise PresentationError(f"unknown flavor {flavor!r}")
    return _build(code, flavor, variant)
