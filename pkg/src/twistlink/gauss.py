"""Bar-extended Gauss codes for twisted link diagrams.

A code is a tuple of components; each component is the cyclic sequence of
what one meets travelling along it: crossing passes (``O3+`` is an over pass
of crossing 3 with sign +1) and bars (``*``). Virtual crossings are not
recorded.

Text grammar::

    code      := component+
    component := "(" token* ")"
    token     := ("O" | "U") digits ("+" | "-") | "*"
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import NamedTuple, Sequence, Union

from .errors import CodeSyntaxError, CodeValidationError

__all__ = [
    "CrossPass", "Bar", "BAR", "Symbol", "TwistedCode", "DiagramStats",
    "Violation", "parse_code", "serialize_code", "validate", "stats",
    "reflect_r", "crossing_change_c", "involution_s", "code_to_json",
    "code_from_json", "relabel", "canonical_form",
]


class CrossPass(NamedTuple):
    """One passage of a strand through a real crossing."""
    crossing: int
    over: bool
    sign: int

    def token(self) -> str:
        return f"{'O' if self.over else 'U'}{self.crossing}{'+' if self.sign > 0 else '-'}"

    def swapped(self) -> "CrossPass":
        return CrossPass(self.crossing, not self.over, self.sign)


class Bar:
    """The bar decoration. Use the module-level singleton :data:`BAR`."""
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def token(self) -> str:
        return "*"

    def __repr__(self) -> str:
        return "BAR"

    def __reduce__(self):
        return (Bar, ())


BAR = Bar()
Symbol = Union[CrossPass, Bar]


@dataclass(frozen=True)
class TwistedCode:
    """Immutable bar-extended Gauss code.

    Equality is literal: same components in the same order, each starting
    at the same symbol. Use :func:`canonical_form` to compare modulo
    rotation, relabeling and component order.
    """
    components: tuple[tuple[Symbol, ...], ...]

    def __post_init__(self):
        comps = tuple(tuple(c) for c in self.components)
        object.__setattr__(self, "components", comps)

    @classmethod
    def from_components(cls, components: Sequence[Sequence[Symbol]]) -> "TwistedCode":
        return cls(tuple(tuple(c) for c in components))

    def __str__(self) -> str:
        return serialize_code(self)

    def __repr__(self) -> str:
        return f"TwistedCode({serialize_code(self)!r})"

    @property
    def crossings(self) -> list[int]:
        """Crossing ids in order of first appearance."""
        seen: dict[int, None] = {}
        for comp in self.components:
            for sym in comp:
                if sym is not BAR:
                    seen.setdefault(sym.crossing, None)
        return list(seen)

    def passes(self) -> dict[int, dict[bool, tuple[int, int]]]:
        """Map crossing id -> {over: (component, position)}."""
        where: dict[int, dict[bool, tuple[int, int]]] = {}
        for ci, comp in enumerate(self.components):
            for pos, sym in enumerate(comp):
                if sym is not BAR:
                    where.setdefault(sym.crossing, {})[sym.over] = (ci, pos)
        return where

    def signs(self) -> dict[int, int]:
        return {s.crossing: s.sign for comp in self.components
                for s in comp if s is not BAR}

    def max_crossing_id(self) -> int:
        return max((s.crossing for comp in self.components
                    for s in comp if s is not BAR), default=0)

    @property
    def bar_count(self) -> int:
        return sum(1 for comp in self.components for s in comp if s is BAR)

    @property
    def crossing_count(self) -> int:
        return len(self.signs())

    def is_virtual(self) -> bool:
        """True when the code carries no bars."""
        return self.bar_count == 0


class DiagramStats(NamedTuple):
    crossing_count: int
    bar_count_per_component: list[int]
    writhe: int
    component_count: int


class Violation(NamedTuple):
    """A broken code invariant. ``where`` is ``("crossing", id)`` or ``("component", index)``."""
    where: tuple[str, int]
    message: str

    def __str__(self) -> str:
        return f"{self.where[0]} {self.where[1]}: {self.message}"


_TOKEN = re.compile(r"\s*(?:([OU])(\d+)([+-])|(\*)|(\()|(\)))")


def parse_code(text: str, check: bool = True) -> TwistedCode:
    """Parse and validate a code such as ``"(O1+ U2+ O3+ U1+ O2+ U3+)"``.

    Raises :class:`CodeSyntaxError` with the offending character offset, or
    :class:`CodeValidationError` listing every broken invariant. With
    ``check=False`` only the syntax is checked.
    """
    components: list[list[Symbol]] = []
    current: list[Symbol] | None = None
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise CodeSyntaxError(f"unexpected character {text[pos]!r}", pos)
        start = m.start() + (len(m.group(0)) - len(m.group(0).lstrip()))
        if m.group(5):
            if current is not None:
                raise CodeSyntaxError("nested '('", start)
            current = []
        elif m.group(6):
            if current is None:
                raise CodeSyntaxError("unmatched ')'", start)
            components.append(current)
            current = None
        else:
            if current is None:
                raise CodeSyntaxError("token outside a component", start)
            if m.group(4):
                current.append(BAR)
            else:
                ident = int(m.group(2))
                if ident <= 0:
                    raise CodeSyntaxError("crossing ids must be positive", start)
                current.append(CrossPass(ident, m.group(1) == "O",
                                         1 if m.group(3) == "+" else -1))
        pos = m.end()
    if current is not None:
        raise CodeSyntaxError("unterminated component", n)
    if not components:
        raise CodeSyntaxError("a code needs at least one component", n)
    code = TwistedCode.from_components(components)
    if not check:
        return code
    problems = validate(code)
    if problems:
        raise CodeValidationError(problems)
    return code


def serialize_code(code: TwistedCode) -> str:
    return " ".join("(" + " ".join(s.token() for s in comp) + ")"
                    for comp in code.components)


def validate(code: TwistedCode) -> list[Violation]:
    """Return the broken invariants of ``code``; an empty list means valid."""
    out: list[Violation] = []
    if not code.components:
        out.append(Violation(("component", 0), "code has no components"))
    seen: dict[int, list[CrossPass]] = {}
    for ci, comp in enumerate(code.components):
        for sym in comp:
            if sym is BAR:
                continue
            if not isinstance(sym, CrossPass):
                out.append(Violation(("component", ci), f"unknown symbol {sym!r}"))
                continue
            if sym.sign not in (1, -1):
                out.append(Violation(("crossing", sym.crossing),
                                     f"sign {sym.sign} is not +1 or -1"))
            if sym.crossing <= 0:
                out.append(Violation(("crossing", sym.crossing), "crossing id must be positive"))
            seen.setdefault(sym.crossing, []).append(sym)
    for ident in sorted(seen):
        group = seen[ident]
        if len(group) != 2:
            out.append(Violation(("crossing", ident),
                                 f"appears {len(group)} times, expected 2"))
            continue
        overs = sum(1 for s in group if s.over)
        if overs == 2:
            out.append(Violation(("crossing", ident), "has two Over passes"))
        elif overs == 0:
            out.append(Violation(("crossing", ident), "has two Under passes"))
        if group[0].sign != group[1].sign:
            out.append(Violation(("crossing", ident), "sign mismatch between passes"))
    return out


def stats(code: TwistedCode) -> DiagramStats:
    signs = code.signs()
    return DiagramStats(
        crossing_count=len(signs),
        bar_count_per_component=[sum(1 for s in comp if s is BAR) for comp in code.components],
        writhe=sum(signs.values()),
        component_count=len(code.components),
    )


def _map_passes(code: TwistedCode, flip_marker: bool, flip_sign: bool) -> TwistedCode:
    def f(sym):
        if sym is BAR:
            return sym
        return CrossPass(sym.crossing, sym.over ^ flip_marker,
                         -sym.sign if flip_sign else sym.sign)
    return TwistedCode(tuple(tuple(f(s) for s in comp) for comp in code.components))


def reflect_r(code: TwistedCode) -> TwistedCode:
    """Mirror in the plane: signs flip, over/under kept."""
    return _map_passes(code, False, True)


def crossing_change_c(code: TwistedCode) -> TwistedCode:
    """Change every real crossing: over/under swap and signs flip."""
    return _map_passes(code, True, True)


def involution_s(code: TwistedCode) -> TwistedCode:
    """``c`` after ``r``: over/under swap, signs kept."""
    return _map_passes(code, True, False)


def code_to_json(code: TwistedCode) -> list[list[str]]:
    return [[s.token() for s in comp] for comp in code.components]


def code_from_json(data) -> TwistedCode:
    if isinstance(data, str):
        data = json.loads(data)
    text = " ".join("(" + " ".join(comp) + ")" for comp in data)
    return parse_code(text)


def relabel(code: TwistedCode) -> TwistedCode:
    """Renumber crossings 1, 2, ... in order of first appearance."""
    mapping = {old: new for new, old in enumerate(code.crossings, start=1)}
    return TwistedCode(tuple(
        tuple(s if s is BAR else CrossPass(mapping[s.crossing], s.over, s.sign) for s in comp)
        for comp in code.components))


def _rotations(comp: tuple[Symbol, ...]):
    if not comp:
        yield comp
        return
    for k in range(len(comp)):
        yield comp[k:] + comp[:k]


def canonical_form(code: TwistedCode) -> str:
    """Serialization of the lexicographically least relabeled representative
    over component rotations and orderings.

    Two codes with the same canonical form describe the same diagram up to
    the choice of base points, crossing names and component order.
    Exponential in the component count; intended for small links.
    """
    from itertools import permutations, product

    best: str | None = None
    comps = code.components
    for order in permutations(range(len(comps))):
        for rots in product(*(list(_rotations(comps[i])) for i in order)):
            cand = serialize_code(relabel(TwistedCode(tuple(rots))))
            if best is None or cand < best:
                best = cand
    assert best is not None
    return best
