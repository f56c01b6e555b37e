"""Finite groups and quandles used as coloring targets."""
from __future__ import annotations

import json
from array import array
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path

from .errors import TwistLinkError

__all__ = ["FiniteTarget", "builtin_target", "builtin_names", "load_target",
           "group_from_table", "quandle_from_table"]

GROUP = "group"
QUANDLE = "quandle"


@dataclass(frozen=True, eq=False)
class FiniteTarget:
    """A finite group (``table[a][b] = ab``) or quandle (``table[a][b] = a * b``).

    For groups ``aux`` is the inverse list and ``identity`` the neutral
    element; for quandles ``aux`` is the dual table with
    ``dual[table[a][b]][b] == a``.
    """
    kind: str
    name: str
    table: tuple[tuple[int, ...], ...]
    aux: tuple = field(repr=False)
    identity: int = 0

    @property
    def order(self) -> int:
        return len(self.table)

    def problems(self) -> list[str]:
        """Axioms that fail; empty for a valid target."""
        n = self.order
        T = self.table
        rng = range(n)
        out = []
        if any(len(row) != n or any(not 0 <= v < n for v in row) for row in T):
            return ["table is not a closed square operation table"]
        if self.kind == GROUP:
            e = self.identity
            inv = self.aux
            if any(T[e][a] != a or T[a][e] != a for a in rng):
                out.append("identity law fails")
            if len(inv) != n or any(T[a][inv[a]] != e or T[inv[a]][a] != e for a in rng):
                out.append("inverse law fails")
            if any(T[T[a][b]][c] != T[a][T[b][c]] for a in rng for b in rng for c in rng):
                out.append("associativity fails")
        elif self.kind == QUANDLE:
            dual = self.aux
            if any(T[a][a] != a for a in rng):
                out.append("idempotence fails")
            if len(dual) != n or any(dual[T[a][b]][b] != a or T[dual[a][b]][b] != a
                                     for a in rng for b in rng):
                out.append("right-invertibility fails")
            if any(T[T[a][b]][c] != T[T[a][c]][T[b][c]] for a in rng for b in rng for c in rng):
                out.append("right self-distributivity fails")
        else:
            out.append(f"unknown kind {self.kind!r}")
        return out

    @cached_property
    def kernel_arrays(self) -> tuple[array, array, array]:
        """``(mul, inv, qtab)`` flattened for the counting kernel."""
        flat = array("i", (v for row in self.table for v in row))
        if self.kind == GROUP:
            return flat, array("i", self.aux), array("i", [0])
        dual = array("i", (v for row in self.aux for v in row))
        return array("i", [0]), array("i", [0]), flat + dual

    def to_json(self) -> dict:
        data = {"kind": self.kind, "name": self.name, "table": [list(r) for r in self.table]}
        if self.kind == GROUP:
            data["identity"] = self.identity
        return data


def group_from_table(name: str, table) -> FiniteTarget:
    table = tuple(tuple(int(v) for v in row) for row in table)
    n = len(table)
    ident = next((e for e in range(n) if all(table[e][a] == a for a in range(n))), None)
    if ident is None:
        raise TwistLinkError(f"group {name!r}: no identity element")
    inv = []
    for a in range(n):
        b = next((b for b in range(n) if table[a][b] == ident), None)
        if b is None:
            raise TwistLinkError(f"group {name!r}: element {a} has no inverse")
        inv.append(b)
    t = FiniteTarget(GROUP, name, table, tuple(inv), ident)
    bad = t.problems()
    if bad:
        raise TwistLinkError(f"group {name!r}: " + ", ".join(bad))
    return t


def quandle_from_table(name: str, table) -> FiniteTarget:
    table = tuple(tuple(int(v) for v in row) for row in table)
    n = len(table)
    dual = [[0] * n for _ in range(n)]
    for b in range(n):
        column = [table[a][b] for a in range(n)]
        if sorted(column) != list(range(n)):
            raise TwistLinkError(f"quandle {name!r}: right translation by {b} is not a bijection")
        for a, v in enumerate(column):
            dual[v][b] = a
    t = FiniteTarget(QUANDLE, name, table, tuple(tuple(r) for r in dual))
    bad = t.problems()
    if bad:
        raise TwistLinkError(f"quandle {name!r}: " + ", ".join(bad))
    return t


def _perm_group(name: str, gens: list[tuple[int, ...]]) -> FiniteTarget:
    ident = tuple(range(len(gens[0])))
    elems = [ident]
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(len(g)))
                if q not in elems:
                    elems.append(q)
                    nxt.append(q)
        frontier = nxt
    index = {p: k for k, p in enumerate(elems)}
    # (pq)(i) = p(q(i))
    table = [[index[tuple(p[q[i]] for i in range(len(q)))] for q in elems] for p in elems]
    return group_from_table(name, table)


def _cyclic(n: int) -> FiniteTarget:
    return group_from_table(f"Z{n}", [[(a + b) % n for b in range(n)] for a in range(n)])


def _quaternion() -> FiniteTarget:
    # elements (sign, unit) with units 1, i, j, k
    units = {("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
             ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
             ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
             ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1")}
    elems = [(s, u) for s in (1, -1) for u in "1ijk"]
    index = {e: k for k, e in enumerate(elems)}
    table = []
    for s1, u1 in elems:
        row = []
        for s2, u2 in elems:
            s3, u3 = units[(u1, u2)]
            row.append(index[(s1 * s2 * s3, u3)])
        table.append(row)
    return group_from_table("Q8", table)


def _dihedral_quandle(n: int) -> FiniteTarget:
    return quandle_from_table(f"R{n}", [[(2 * b - a) % n for b in range(n)] for a in range(n)])


def _trivial_quandle(n: int) -> FiniteTarget:
    return quandle_from_table(f"T{n}", [[a for _ in range(n)] for a in range(n)])


_BUILDERS = {
    "Z2": lambda: _cyclic(2),
    "Z3": lambda: _cyclic(3),
    "Z4": lambda: _cyclic(4),
    "Z5": lambda: _cyclic(5),
    "S3": lambda: _perm_group("S3", [(1, 0, 2), (1, 2, 0)]),
    "D4": lambda: _perm_group("D4", [(1, 2, 3, 0), (0, 3, 2, 1)]),
    "Q8": _quaternion,
    "S4": lambda: _perm_group("S4", [(1, 0, 2, 3), (1, 2, 3, 0)]),
    "R3": lambda: _dihedral_quandle(3),
    "R4": lambda: _dihedral_quandle(4),
    "R5": lambda: _dihedral_quandle(5),
    "R6": lambda: _dihedral_quandle(6),
    "T1": lambda: _trivial_quandle(1),
    "T2": lambda: _trivial_quandle(2),
    "T3": lambda: _trivial_quandle(3),
}
_CACHE: dict[str, FiniteTarget] = {}

GROUP_TARGETS = ("Z2", "Z3", "Z4", "S3", "D4", "Q8", "S4", "Z5")
QUANDLE_TARGETS = ("R3", "R4", "R5", "R6", "T1", "T2", "T3")


def builtin_names(kind: str | None = None) -> list[str]:
    if kind == GROUP:
        return list(GROUP_TARGETS)
    if kind == QUANDLE:
        return list(QUANDLE_TARGETS)
    return list(_BUILDERS)


def builtin_target(name: str) -> FiniteTarget:
    """Built-in target by name, e.g. ``"S3"`` or ``"R3"``."""
    if name not in _BUILDERS:
        raise TwistLinkError(f"unknown target {name!r}; known: {', '.join(_BUILDERS)}")
    if name not in _CACHE:
        _CACHE[name] = _BUILDERS[name]()
    return _CACHE[name]


def load_target(source) -> FiniteTarget:
    """Target from a JSON file path, JSON string or already-decoded dict.

    Expected keys: ``kind`` ("group" or "quandle"), ``name``, ``table``.
    """
    if isinstance(source, dict):
        data = source
    else:
        text = str(source)
        if not text.lstrip().startswith("{"):
            text = Path(text).read_text()
        data = json.loads(text)
    kind = data.get("kind")
    name = data.get("name", "custom")
    if kind == GROUP:
        return group_from_table(name, data["table"])
    if kind == QUANDLE:
        return quandle_from_table(name, data["table"])
    raise TwistLinkError(f"target kind must be 'group' or 'quandle', got {kind!r}")
