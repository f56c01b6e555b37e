"""Double covering diagrams by sheet-tracking traversal.

Walking a component, a bar moves the walker to the other sheet. Passes read
on sheet 1 are copied; passes read on sheet 2 come from the mirror copy and
have over/under exchanged with the sign kept. A component with an odd
number of bars closes up only after two laps and lifts to one component;
otherwise it lifts to two.
"""
from __future__ import annotations

from dataclasses import dataclass

from .gauss import BAR, CrossPass, TwistedCode, serialize_code

__all__ = ["CoverResult", "double_cover", "component_lift_counts"]


@dataclass(frozen=True)
class CoverResult:
    cover: TwistedCode
    sheet_map: tuple[tuple[int, int], ...]       # lifted component -> (source component, start sheet)
    crossing_map: dict[int, tuple[int, int]]     # lifted id -> (source id, sheet)

    def to_json(self) -> dict:
        return {
            "cover": serialize_code(self.cover),
            "sheet_map": [list(x) for x in self.sheet_map],
            "crossing_map": {str(k): list(v) for k, v in sorted(self.crossing_map.items())},
        }


def component_lift_counts(code: TwistedCode) -> list[int]:
    """1 for a component with an odd number of bars, else 2."""
    return [1 if sum(1 for s in comp if s is BAR) % 2 else 2 for comp in code.components]


def double_cover(code: TwistedCode) -> CoverResult:
    offset = code.max_crossing_id()
    components = []
    sheet_map = []

    def lift(comp, start_sheet: int, laps: int):
        sheet = start_sheet
        out = []
        for _ in range(laps):
            for sym in comp:
                if sym is BAR:
                    sheet = 3 - sheet
                elif sheet == 1:
                    out.append(sym)
                else:
                    out.append(CrossPass(sym.crossing + offset, not sym.over, sym.sign))
        return tuple(out)

    for ci, comp in enumerate(code.components):
        bars = sum(1 for s in comp if s is BAR)
        if bars % 2:
            components.append(lift(comp, 1, 2))
            sheet_map.append((ci, 1))
        else:
            components.append(lift(comp, 1, 1))
            sheet_map.append((ci, 1))
            components.append(lift(comp, 2, 1))
            sheet_map.append((ci, 2))

    crossing_map = {}
    for c in code.signs():
        crossing_map[c] = (c, 1)
        crossing_map[c + offset] = (c, 2)
    return CoverResult(TwistedCode(tuple(components)), tuple(sheet_map), crossing_map)
