"""Named diagrams shipped with the package, plus loading of user catalogs.

A catalog is a JSON array of objects with ``name``, ``code``, optional
``notes``, optional ``expected`` (invariant name -> value) and optional
``derivation``: a move sequence that rewrites the entry into ``target``
(a code) or that produces the entry from the entry named ``source``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .errors import CatalogError, TwistLinkError
from .gauss import TwistedCode, parse_code, serialize_code
from .moves import MoveSite, MoveTrace

__all__ = ["CatalogEntry", "catalog_load", "builtin_catalog", "entry_invariants",
           "derivation_trace", "EXPECTED_KEYS"]


@dataclass(frozen=True)
class CatalogEntry:
    name: str
    code: TwistedCode
    notes: str = ""
    expected: dict = field(default_factory=dict)
    derivation: dict | None = None

    def to_json(self) -> dict:
        out = {"name": self.name, "code": serialize_code(self.code), "notes": self.notes}
        if self.expected:
            out["expected"] = dict(self.expected)
        if self.derivation:
            out["derivation"] = self.derivation
        return out


def _entry(raw, index: int) -> CatalogEntry:
    if not isinstance(raw, dict) or not isinstance(raw.get("name"), str) \
            or not isinstance(raw.get("code"), str):
        raise CatalogError(f"entry {index} needs string fields 'name' and 'code'")
    try:
        code = parse_code(raw["code"])
    except TwistLinkError as exc:
        raise CatalogError(f"entry {raw['name']!r}: {exc}") from exc
    expected = raw.get("expected") or {}
    if not isinstance(expected, dict):
        raise CatalogError(f"entry {raw['name']!r}: 'expected' must be an object")
    unknown = set(expected) - set(EXPECTED_KEYS)
    if unknown:
        raise CatalogError(f"entry {raw['name']!r}: unknown expected keys {sorted(unknown)}")
    return CatalogEntry(raw["name"], code, raw.get("notes", ""), dict(expected),
                        raw.get("derivation"))


def _parse(data) -> list[CatalogEntry]:
    if not isinstance(data, list):
        raise CatalogError("a catalog is a JSON array of entries")
    entries = [_entry(raw, k) for k, raw in enumerate(data)]
    seen = set()
    for e in entries:
        if e.name in seen:
            raise CatalogError(f"duplicate catalog name {e.name!r}")
        seen.add(e.name)
    return entries


def builtin_catalog() -> list[CatalogEntry]:
    text = resources.files("twistlink").joinpath("data/catalog.json").read_text()
    return _parse(json.loads(text))


def catalog_load(source: str | Path | None = None) -> list[CatalogEntry]:
    """Load ``source`` (a path) or the built-in catalog when ``source`` is None or ``"builtin"``."""
    if source is None or source == "builtin":
        return builtin_catalog()
    try:
        data = json.loads(Path(source).read_text())
    except OSError as exc:
        raise CatalogError(f"cannot read catalog {source}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise CatalogError(f"catalog {source} is not valid JSON: {exc}") from exc
    return _parse(data)


def derivation_trace(entry: CatalogEntry, catalog: list[CatalogEntry]) -> MoveTrace | None:
    """The recorded derivation as a replayable trace, or None."""
    d = entry.derivation
    if not d:
        return None
    steps = tuple(MoveSite.from_json(s) for s in d["steps"])
    if "source" in d:
        src = next((e for e in catalog if e.name == d["source"]), None)
        if src is None:
            raise CatalogError(f"derivation of {entry.name!r} names unknown source {d['source']!r}")
        return MoveTrace(src.code, steps, entry.code)
    return MoveTrace(entry.code, steps, parse_code(d["target"]))


def _cover_components(code):
    from .cover import double_cover
    return len(double_cover(code).cover.components)


def _orientable(code):
    from .ribbon import abstract_diagram, surface_invariants
    return surface_invariants(abstract_diagram(code)).orientable


EXPECTED_KEYS = {
    "crossings": lambda c: c.crossing_count,
    "writhe": lambda c: sum(c.signs().values()),
    "bars": lambda c: c.bar_count,
    "cover_components": _cover_components,
    "orientable": _orientable,
}


def entry_invariants(entry: CatalogEntry) -> dict:
    """Recompute every key listed in ``entry.expected``."""
    return {k: EXPECTED_KEYS[k](entry.code) for k in entry.expected}
