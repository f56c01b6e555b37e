"""Code-level Reidemeister and twisted moves.

V-moves and T2 do not change a code, so they have no representation here.
Supported rewrites:

``R1_insert / R1_delete``
    a kink: adjacent passes of one crossing, any sign and marker order.
``R2_insert / R2_delete``
    adjacent over passes of two crossings with opposite signs whose under
    passes are also adjacent, in either order (parallel or antiparallel
    strands). Both pairs may sit on one component, even in one gap.
``R3``
    three crossings a, b, c whose passes form adjacent pairs {O_a, O_b},
    {U_a, O_c}, {U_b, U_c}; the move reverses each pair and keeps signs.
    Only the 16 order/sign configurations realised by three straight lines
    are accepted (see :func:`r3_configurations`).
``T1_insert / T1_delete``
    two adjacent bars.
``T3``
    flipping the neighbourhood of a crossing over: every one of its four
    arms gains a bar modulo two, and the crossing has over/under exchanged
    with its sign kept. A site removes bars already sitting on two arms and
    places bars on the other two.
"""
from __future__ import annotations

import itertools
import json
import math
import random
from dataclasses import dataclass, field
from enum import Enum
from functools import lru_cache

from .errors import MoveError
from .gauss import BAR, CrossPass, TwistedCode, parse_code, serialize_code

__all__ = ["MoveKind", "MoveSite", "MoveTrace", "enumerate_moves", "apply_move",
           "random_walk", "r3_configurations", "MoveSpace", "ARMS"]


class MoveKind(str, Enum):
    R1_INSERT = "R1_insert"
    R1_DELETE = "R1_delete"
    R2_INSERT = "R2_insert"
    R2_DELETE = "R2_delete"
    R3 = "R3"
    T1_INSERT = "T1_insert"
    T1_DELETE = "T1_delete"
    T3 = "T3"

    def __str__(self) -> str:
        return self.value


PARAM_NAMES = {
    MoveKind.R1_INSERT: ("first_over", "sign"),
    MoveKind.R1_DELETE: ("crossing",),
    MoveKind.R2_INSERT: ("sign", "parallel", "over_first"),
    MoveKind.R2_DELETE: ("first", "second"),
    MoveKind.R3: ("a", "b", "c"),
    MoveKind.T1_INSERT: (),
    MoveKind.T1_DELETE: (),
    MoveKind.T3: ("crossing", "arms"),
}

ARMS = ("in_over", "out_over", "in_under", "out_under")

Loc = tuple[int, int]


@dataclass(frozen=True)
class MoveSite:
    """A rewrite at a code location.

    ``location`` holds ``(component, position)`` pairs. For insertions the
    position is a gap: symbols are inserted before index ``position``. For
    pair patterns it is the index of the first symbol of the pair (the
    second is the cyclic successor). ``params`` follow :data:`PARAM_NAMES`.
    """
    kind: MoveKind
    location: tuple[Loc, ...]
    params: tuple = ()

    def to_json(self) -> dict:
        names = PARAM_NAMES[self.kind]
        return {"kind": self.kind.value,
                "location": [list(l) for l in self.location],
                "params": {n: (list(v) if isinstance(v, tuple) else v)
                           for n, v in zip(names, self.params)}}

    @classmethod
    def from_json(cls, data: dict) -> "MoveSite":
        kind = MoveKind(data["kind"])
        raw = data.get("params", {})
        params = tuple(tuple(raw[n]) if isinstance(raw[n], list) else raw[n]
                       for n in PARAM_NAMES[kind])
        return cls(kind, tuple(tuple(l) for l in data["location"]), params)

    def __str__(self) -> str:
        loc = " ".join(f"{c}:{p}" for c, p in self.location)
        return f"{self.kind.value}@{loc}{list(self.params) if self.params else ''}"


@dataclass(frozen=True)
class MoveTrace:
    initial: TwistedCode
    steps: tuple[MoveSite, ...] = field(default=())
    final: TwistedCode | None = None

    def replay(self) -> TwistedCode:
        code = self.initial
        for site in self.steps:
            code = apply_move(code, site)
        return code

    def to_json(self) -> dict:
        return {"initial": serialize_code(self.initial),
                "steps": [s.to_json() for s in self.steps],
                "final": serialize_code(self.final if self.final is not None else self.initial)}

    @classmethod
    def from_json(cls, data) -> "MoveTrace":
        if isinstance(data, str):
            data = json.loads(data)
        return cls(parse_code(data["initial"]),
                   tuple(MoveSite.from_json(s) for s in data["steps"]),
                   parse_code(data["final"]))


@lru_cache(maxsize=None)
def r3_configurations() -> frozenset:
    """Order/sign data realised by three straight oriented lines.

    Lines T (top), M (middle), B (bottom) meet in a = T∩M, b = T∩B,
    c = M∩B. Each entry is ``((a<b on T, a<c on M, b<c on B), (sign a,
    sign b, sign c))``. Sliding B across a reverses all three orders and
    keeps the signs, which is the R3 move.
    """
    def cross(u, v):
        return u[0] * v[1] - u[1] * v[0]

    def meet(p, d, q, e):
        s = cross((q[0] - p[0], q[1] - p[1]), e) / cross(d, e)
        return (p[0] + s * d[0], p[1] + s * d[1])

    def along(d, x):
        return x[0] * d[0] + x[1] * d[1]

    def sgn(x):
        return 1 if x > 0 else -1

    found = set()
    angles = [k * math.pi / 9 for k in range(9)]
    for at, am, ab in itertools.permutations(angles, 3):
        for ot, om, ob in itertools.product((1, -1), repeat=3):
            dt = (ot * math.cos(at), ot * math.sin(at))
            dm = (om * math.cos(am), om * math.sin(am))
            db = (ob * math.cos(ab), ob * math.sin(ab))
            signs = (sgn(cross(dt, dm)), sgn(cross(dt, db)), sgn(cross(dm, db)))
            for side in (-1, 1):
                pb = (-side * db[1], side * db[0])
                a = (0.0, 0.0)
                b = meet(a, dt, pb, db)
                c = meet(a, dm, pb, db)
                orders = (along(dt, a) < along(dt, b), along(dm, a) < along(dm, c),
                          along(db, b) < along(db, c))
                found.add((orders, signs))
    return frozenset(found)


def _gaps(code: TwistedCode) -> list[Loc]:
    return [(ci, p) for ci, comp in enumerate(code.components) for p in range(max(len(comp), 1))]


def _adjacent_pairs(code: TwistedCode):
    """Yield (component, first index) for every cyclically adjacent pair, once each."""
    for ci, comp in enumerate(code.components):
        n = len(comp)
        if n < 2:
            continue
        for p in range(n if n > 2 else 1):
            yield ci, p


def _sym(code, ci, p):
    comp = code.components[ci]
    return comp[p % len(comp)]


def _pair_at(code: TwistedCode, x: Loc, y: Loc) -> Loc | None:
    """Start of the adjacent pair formed by positions x and y, if they are adjacent."""
    if x[0] != y[0]:
        return None
    n = len(code.components[x[0]])
    if n < 2 or x == y:
        return None
    if (x[1] + 1) % n == y[1]:
        return x
    if (y[1] + 1) % n == x[1]:
        return y
    return None


def _deletion_sites(code: TwistedCode) -> list[MoveSite]:
    out = []
    where = code.passes()
    seen_r1 = set()
    seen_r2 = set()
    for ci, p in _adjacent_pairs(code):
        s1 = _sym(code, ci, p)
        s2 = _sym(code, ci, p + 1)
        if s1 is BAR or s2 is BAR:
            continue
        if s1.crossing == s2.crossing:
            if s1.crossing not in seen_r1:
                seen_r1.add(s1.crossing)
                out.append(MoveSite(MoveKind.R1_DELETE, ((ci, p),), (s1.crossing,)))
            continue
        if s1.over and s2.over and s1.sign == -s2.sign:
            key = frozenset((s1.crossing, s2.crossing))
            if key in seen_r2:
                continue
            under = _pair_at(code, where[s1.crossing][False], where[s2.crossing][False])
            if under is not None:
                seen_r2.add(key)
                out.append(MoveSite(MoveKind.R2_DELETE, ((ci, p), under),
                                    (s1.crossing, s2.crossing)))
    return out


def _r3_realisable(code: TwistedCode, top: Loc, mid: Loc, bot: Loc, a: int, b: int, c: int) -> bool:
    """Whether the three adjacent pairs form one of the straight-line configurations.

    On a two-symbol component either arc may be the side of the triangle,
    so its order bit is unconstrained.
    """
    signs = code.signs()
    firsts = ((top, a), (mid, a), (bot, b))
    choices = []
    for loc, first in firsts:
        if len(code.components[loc[0]]) == 2:
            choices.append((True, False))
        else:
            choices.append((_sym(code, *loc).crossing == first,))
    table = r3_configurations()
    key_signs = (signs[a], signs[b], signs[c])
    return any((orders, key_signs) in table for orders in itertools.product(*choices))


def _r3_sites(code: TwistedCode) -> list[MoveSite]:
    where = code.passes()
    out = []
    seen = set()
    for ci, p in _adjacent_pairs(code):
        s1 = _sym(code, ci, p)
        s2 = _sym(code, ci, p + 1)
        if s1 is BAR or s2 is BAR or not (s1.over and s2.over) or s1.crossing == s2.crossing:
            continue
        for a, b in ((s1.crossing, s2.crossing), (s2.crossing, s1.crossing)):
            ua = where[a][False]
            ub = where[b][False]
            n_ua = len(code.components[ua[0]])
            for q in (ua[1] - 1, ua[1] + 1):
                nb = code.components[ua[0]][q % n_ua]
                if nb is BAR or not nb.over or nb.crossing in (a, b):
                    continue
                c = nb.crossing
                mid = _pair_at(code, ua, (ua[0], q % n_ua))
                bot = _pair_at(code, ub, where[c][False])
                if mid is None or bot is None:
                    continue
                top = (ci, p)
                if not _r3_realisable(code, top, mid, bot, a, b, c):
                    continue
                ident = (a, b, c)
                if ident in seen:
                    continue
                seen.add(ident)
                out.append(MoveSite(MoveKind.R3, (top, mid, bot), ident))
    return out


def _bar_sites(code: TwistedCode) -> list[MoveSite]:
    out = []
    for ci, p in _adjacent_pairs(code):
        if _sym(code, ci, p) is BAR and _sym(code, ci, p + 1) is BAR:
            out.append(MoveSite(MoveKind.T1_DELETE, ((ci, p),)))
    return out


def _arm_bars(code: TwistedCode, c: int) -> dict[str, Loc]:
    """Arms of crossing ``c`` carrying an adjacent bar -> that bar's position."""
    where = code.passes()[c]
    out = {}
    for over, name in ((True, "over"), (False, "under")):
        ci, p = where[over]
        comp = code.components[ci]
        n = len(comp)
        if comp[(p - 1) % n] is BAR:
            out["in_" + name] = (ci, (p - 1) % n)
        if comp[(p + 1) % n] is BAR:
            out["out_" + name] = (ci, (p + 1) % n)
    return out


def _t3_sites(code: TwistedCode) -> list[MoveSite]:
    out = []
    where = code.passes()
    for c in code.crossings:
        bars = _arm_bars(code, c)
        for a1, a2 in itertools.combinations(ARMS, 2):
            if a1 in bars and a2 in bars and bars[a1] != bars[a2]:
                out.append(MoveSite(MoveKind.T3, (where[c][True], where[c][False]), (c, (a1, a2))))
    return out


_FIXED_ORDER = (MoveKind.R1_DELETE, MoveKind.R2_DELETE, MoveKind.R3,
                MoveKind.T1_DELETE, MoveKind.T3)


class MoveSpace:
    """All sites of a code, indexable without materialising the insertions.

    Order: deletions (R1, R2), R3, T1 deletions, T3, then R1, T1 and R2
    insertions. ``list(MoveSpace(code))`` equals :func:`enumerate_moves`.
    """

    def __init__(self, code: TwistedCode):
        self.code = code
        fixed = (_deletion_sites(code) + _r3_sites(code) + _bar_sites(code)
                 + _t3_sites(code))
        self.fixed = sorted(fixed, key=lambda s: _FIXED_ORDER.index(s.kind))
        self.gaps = _gaps(code)
        g = len(self.gaps)
        self.sizes = [len(self.fixed), 4 * g, g, 4 * g * g + 4 * g]

    def __len__(self) -> int:
        return sum(self.sizes)

    def kinds(self) -> dict[MoveKind, range]:
        """Index ranges per move kind."""
        out: dict[MoveKind, range] = {}
        start = 0
        for s in self.fixed:
            r = out.get(s.kind)
            out[s.kind] = range(r.start if r else start, start + 1)
            start += 1
        g = len(self.gaps)
        for kind, size in ((MoveKind.R1_INSERT, 4 * g), (MoveKind.T1_INSERT, g),
                           (MoveKind.R2_INSERT, 4 * g * g + 4 * g)):
            out[kind] = range(start, start + size)
            start += size
        return out

    def __getitem__(self, i: int) -> MoveSite:
        if i < 0:
            i += len(self)
        if not 0 <= i < len(self):
            raise IndexError(i)
        if i < self.sizes[0]:
            return self.fixed[i]
        i -= self.sizes[0]
        if i < self.sizes[1]:
            gap, rest = divmod(i, 4)
            first_over, sign = divmod(rest, 2)
            return MoveSite(MoveKind.R1_INSERT, (self.gaps[gap],),
                            (bool(1 - first_over), 1 - 2 * sign))
        i -= self.sizes[1]
        if i < self.sizes[2]:
            return MoveSite(MoveKind.T1_INSERT, (self.gaps[i],))
        i -= self.sizes[2]
        g = len(self.gaps)
        if i < 4 * g * g:
            pair, rest = divmod(i, 4)
            g1, g2 = divmod(pair, g)
            parallel, sign = divmod(rest, 2)
            return MoveSite(MoveKind.R2_INSERT, (self.gaps[g1], self.gaps[g2]),
                            (1 - 2 * sign, not parallel, True))
        i -= 4 * g * g
        gap, rest = divmod(i, 4)
        parallel, sign = divmod(rest, 2)
        loc = self.gaps[gap]
        return MoveSite(MoveKind.R2_INSERT, (loc, loc), (1 - 2 * sign, not parallel, False))

    def __iter__(self):
        for i in range(len(self)):
            yield self[i]


def enumerate_moves(code: TwistedCode) -> list[MoveSite]:
    """Every applicable deletion, R3 and T3 site plus the bounded insertion family."""
    return list(MoveSpace(code))


def _rebuild(code: TwistedCode, delete=(), insert=None, replace=None) -> TwistedCode:
    delete = set(delete)
    insert = insert or {}
    replace = replace or {}
    comps = []
    for ci, comp in enumerate(code.components):
        out = []
        for p, sym in enumerate(comp):
            out.extend(insert.get((ci, p), ()))
            if (ci, p) not in delete:
                out.append(replace.get((ci, p), sym))
        if comp:
            out.extend(insert.get((ci, len(comp)), ()))
        else:
            out.extend(insert.get((ci, 0), ()))
        comps.append(tuple(out))
    return TwistedCode(tuple(comps))


def _check_gap(code: TwistedCode, loc: Loc):
    ci, p = loc
    if not 0 <= ci < len(code.components) or not 0 <= p < max(len(code.components[ci]), 1):
        raise MoveError(f"gap {loc} out of range")


def _check_pos(code: TwistedCode, loc: Loc):
    ci, p = loc
    if not 0 <= ci < len(code.components) or not 0 <= p < len(code.components[ci]):
        raise MoveError(f"position {loc} out of range")


def _next(code: TwistedCode, loc: Loc) -> Loc:
    ci, p = loc
    return ci, (p + 1) % len(code.components[ci])


def _add(insert: dict, loc: Loc, syms):
    insert.setdefault(loc, []).extend(syms)


def apply_move(code: TwistedCode, site: MoveSite) -> TwistedCode:
    """Rewrite ``code`` at ``site``; raises :class:`MoveError` if the pattern is absent."""
    kind = site.kind
    fresh = code.max_crossing_id() + 1

    if kind is MoveKind.R1_INSERT:
        (loc,) = site.location
        _check_gap(code, loc)
        first_over, sign = site.params
        syms = [CrossPass(fresh, first_over, sign), CrossPass(fresh, not first_over, sign)]
        return _rebuild(code, insert={loc: syms})

    if kind is MoveKind.T1_INSERT:
        (loc,) = site.location
        _check_gap(code, loc)
        return _rebuild(code, insert={loc: [BAR, BAR]})

    if kind is MoveKind.R2_INSERT:
        g1, g2 = site.location
        _check_gap(code, g1)
        _check_gap(code, g2)
        sign, parallel, over_first = site.params
        a, b = fresh, fresh + 1
        overs = [CrossPass(a, True, sign), CrossPass(b, True, -sign)]
        unders = [CrossPass(a, False, sign), CrossPass(b, False, -sign)]
        if not parallel:
            unders.reverse()
        if g1 == g2:
            return _rebuild(code, insert={g1: overs + unders if over_first else unders + overs})
        return _rebuild(code, insert={g1: overs, g2: unders})

    if kind is MoveKind.R1_DELETE:
        (loc,) = site.location
        _check_pos(code, loc)
        s1, s2 = _sym(code, *loc), _sym(code, *_next(code, loc))
        if (s1 is BAR or s2 is BAR or s1.crossing != s2.crossing or loc == _next(code, loc)
                or (site.params and site.params[0] != s1.crossing)):
            raise MoveError(f"no kink at {loc}")
        return _rebuild(code, delete={loc, _next(code, loc)})

    if kind is MoveKind.T1_DELETE:
        (loc,) = site.location
        _check_pos(code, loc)
        if loc == _next(code, loc) or _sym(code, *loc) is not BAR \
                or _sym(code, *_next(code, loc)) is not BAR:
            raise MoveError(f"no bar pair at {loc}")
        return _rebuild(code, delete={loc, _next(code, loc)})

    if kind is MoveKind.R2_DELETE:
        top, bottom = site.location
        _check_pos(code, top)
        _check_pos(code, bottom)
        t1, t2 = _sym(code, *top), _sym(code, *_next(code, top))
        b1, b2 = _sym(code, *bottom), _sym(code, *_next(code, bottom))
        if any(s is BAR for s in (t1, t2, b1, b2)) or top == _next(code, top) \
                or bottom == _next(code, bottom):
            raise MoveError("R2 pattern absent")
        if not (t1.over and t2.over and not b1.over and not b2.over
                and t1.crossing != t2.crossing and t1.sign == -t2.sign
                and {b1.crossing, b2.crossing} == {t1.crossing, t2.crossing}):
            raise MoveError("R2 pattern absent")
        return _rebuild(code, delete={top, _next(code, top), bottom, _next(code, bottom)})

    if kind is MoveKind.R3:
        top, mid, bot = site.location
        for loc in (top, mid, bot):
            _check_pos(code, loc)
            if loc == _next(code, loc):
                raise MoveError("R3 pattern absent")
        pairs = [(_sym(code, *l), _sym(code, *_next(code, l))) for l in (top, mid, bot)]
        if any(s is BAR for pr in pairs for s in pr):
            raise MoveError("R3 pattern absent")
        a, b, c = site.params
        (t1, t2), (m1, m2), (u1, u2) = pairs
        ok = ({(t1.crossing, t1.over), (t2.crossing, t2.over)} == {(a, True), (b, True)}
              and {(m1.crossing, m1.over), (m2.crossing, m2.over)} == {(a, False), (c, True)}
              and {(u1.crossing, u1.over), (u2.crossing, u2.over)} == {(b, False), (c, False)})
        if not ok:
            raise MoveError("R3 pattern absent")
        if not _r3_realisable(code, top, mid, bot, a, b, c):
            raise MoveError("R3 configuration is not realisable")
        replace = {}
        for l, (s1, s2) in zip((top, mid, bot), pairs):
            replace[l] = s2
            replace[_next(code, l)] = s1
        return _rebuild(code, replace=replace)

    if kind is MoveKind.T3:
        c, arms = site.params
        if c not in code.signs():
            raise MoveError(f"no crossing {c}")
        bars = _arm_bars(code, c)
        a1, a2 = arms
        if a1 not in bars or a2 not in bars or bars[a1] == bars[a2] or a1 == a2:
            raise MoveError(f"arms {arms} of crossing {c} do not both carry bars")
        where = code.passes()[c]
        insert: dict = {}
        for arm in ARMS:
            if arm in arms:
                continue
            direction, strand = arm.split("_")
            ci, p = where[strand == "over"]
            _add(insert, (ci, p if direction == "in" else p + 1), [BAR])
        replace = {where[True]: code.components[where[True][0]][where[True][1]].swapped(),
                   where[False]: code.components[where[False][0]][where[False][1]].swapped()}
        return _rebuild(code, delete={bars[a1], bars[a2]}, insert=insert, replace=replace)

    raise MoveError(f"unknown move kind {kind!r}")


def random_walk(code: TwistedCode, steps: int, seed: int, balance: str = "site") -> MoveTrace:
    """Seeded walk of ``steps`` moves.

    ``balance="site"`` draws each step uniformly from all sites of the
    current code. ``balance="kind"`` first draws a move kind uniformly among
    those with a site, then a site of that kind, so rare patterns such as R3
    and T3 are exercised.
    """
    if balance not in ("site", "kind"):
        raise ValueError("balance must be 'site' or 'kind'")
    rng = random.Random(seed)
    current = code
    taken = []
    for _ in range(steps):
        space = MoveSpace(current)
        if balance == "site":
            site = space[rng.randrange(len(space))]
        else:
            ranges = space.kinds()
            kind = rng.choice(sorted(ranges, key=lambda k: k.value))
            r = ranges[kind]
            site = space[rng.randrange(r.start, r.stop)]
        current = apply_move(current, site)
        taken.append(site)
    return MoveTrace(code, tuple(taken), current)
