"""Abstract link diagrams as signed rotation systems.

Each crossing is a disk with four darts named by role: ``oi``/``oo`` for
the over strand coming in/going out and ``ui``/``uo`` for the under strand.
The disk carries a frame (the cyclic order of its darts, read
counterclockwise) and a local orientation bit saying whether the local
orientation of the surface agrees with that frame. Bands join darts along
the strands; a band's twist bit records a half twist relative to the frames
at its two ends, which is the parity of the bars on that stretch of strand.

Two representations describe the same surface when they differ by a frame
change at a vertex (reverse its rotation, flip its orientation bit, toggle
the twist of every band end there). An inversion flips the orientation bit
and exchanges over with under. After :func:`normalize` every orientation
bit is positive, so isomorphism is tested modulo the composite of both
operations.

Rotation at a positive crossing is ``(oi, ui, oo, uo)``; a negative
crossing uses the mirror ``(oi, uo, oo, ui)``.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import NamedTuple

from .errors import RibbonSizeError, TwistLinkError
from .gauss import BAR, TwistedCode

__all__ = ["Vertex", "Edge", "RibbonDiagram", "ComponentSurface", "SurfaceInvariants",
           "abstract_diagram", "surface_invariants", "orientation_double_cover",
           "normalize", "invert", "flip_frame", "ribbon_isomorphic", "ROLES"]

ROLES = ("oi", "ui", "oo", "uo")
_SWAP = {"oi": "ui", "ui": "oi", "oo": "uo", "uo": "oo"}
_POSITIVE = ("oi", "ui", "oo", "uo")
_NEGATIVE = ("oi", "uo", "oo", "ui")

Dart = tuple  # (vertex id, role)


def _cyclic_equal(a, b) -> bool:
    if len(a) != len(b):
        return False
    k = b.index(a[0]) if a and a[0] in b else -1
    return k >= 0 and tuple(b[k:] + b[:k]) == tuple(a)


class Vertex(NamedTuple):
    id: int
    rotation: tuple[str, ...]   # counterclockwise in the vertex frame
    orientation: int = 1        # +1 when the local orientation agrees with the frame

    @property
    def sign(self) -> int:
        positive = _cyclic_equal(self.rotation, _POSITIVE)
        return (1 if positive else -1) * self.orientation


class Edge(NamedTuple):
    a: Dart
    b: Dart
    twist: int


@dataclass(frozen=True)
class RibbonDiagram:
    vertices: tuple[Vertex, ...]
    edges: tuple[Edge, ...]
    free_loops: tuple[int, ...] = field(default=())  # bar parity of each crossing-free circle

    def __post_init__(self):
        seen = set()
        ids = {v.id for v in self.vertices}
        for v in self.vertices:
            if sorted(v.rotation) != sorted(ROLES):
                raise TwistLinkError(f"vertex {v.id} needs exactly the four darts {ROLES}")
            if v.orientation not in (1, -1):
                raise TwistLinkError(f"vertex {v.id} orientation must be +1 or -1")
            k = v.rotation.index("oi")
            if v.rotation[(k + 2) % 4] != "oo":
                raise TwistLinkError(f"vertex {v.id}: over darts are not opposite")
        for e in self.edges:
            for d in (e.a, e.b):
                if d[0] not in ids or d[1] not in ROLES:
                    raise TwistLinkError(f"edge end {d} does not name a dart")
                if d in seen:
                    raise TwistLinkError(f"dart {d} lies on two edges")
                seen.add(d)
        if len(seen) != 4 * len(self.vertices):
            raise TwistLinkError("some dart lies on no edge")

    def vertex(self, vid: int) -> Vertex:
        for v in self.vertices:
            if v.id == vid:
                return v
        raise KeyError(vid)

    def to_json(self) -> dict:
        return {
            "vertices": [{"id": v.id, "rotation": list(v.rotation),
                          "orientation": v.orientation, "sign": v.sign}
                         for v in self.vertices],
            "edges": [{"ends": [list(e.a), list(e.b)], "twist": e.twist} for e in self.edges],
            "free_loops": list(self.free_loops),
        }

    @classmethod
    def from_json(cls, data: dict) -> "RibbonDiagram":
        verts = tuple(Vertex(v["id"], tuple(v["rotation"]), v.get("orientation", 1))
                      for v in data["vertices"])
        edges = tuple(Edge(tuple(e["ends"][0]), tuple(e["ends"][1]), e["twist"] & 1)
                      for e in data["edges"])
        return cls(verts, edges, tuple(data.get("free_loops", ())))


def abstract_diagram(code: TwistedCode) -> RibbonDiagram:
    """Ribbon structure of a code with every local orientation taken from the plane."""
    signs = code.signs()
    verts = tuple(Vertex(c, _POSITIVE if signs[c] > 0 else _NEGATIVE, 1)
                  for c in code.crossings)
    edges = []
    loops = []
    for comp in code.components:
        passes = [k for k, s in enumerate(comp) if s is not BAR]
        if not passes:
            loops.append(len(comp) % 2)
            continue
        n = len(comp)
        for idx, k in enumerate(passes):
            nxt = passes[(idx + 1) % len(passes)]
            gap = (nxt - k - 1) % n if len(passes) > 1 else n - 1
            s, t = comp[k], comp[nxt]
            edges.append(Edge((s.crossing, "oo" if s.over else "uo"),
                              (t.crossing, "oi" if t.over else "ui"), gap % 2))
    return RibbonDiagram(verts, tuple(edges), tuple(loops))


# ----------------------------------------------------------------- surfaces

class ComponentSurface(NamedTuple):
    vertices: tuple[int, ...]   # crossing ids; empty for a free loop
    orientable: bool
    euler_characteristic: int
    boundary_components: int
    genus_or_crosscaps: int


@dataclass(frozen=True)
class SurfaceInvariants:
    components: tuple[ComponentSurface, ...]

    @property
    def orientable(self) -> bool:
        return all(c.orientable for c in self.components)

    @property
    def euler_characteristic(self) -> int:
        return sum(c.euler_characteristic for c in self.components)

    @property
    def boundary_components(self) -> int:
        return sum(c.boundary_components for c in self.components)

    @property
    def genus_or_crosscaps(self) -> int:
        return sum(c.genus_or_crosscaps for c in self.components)

    def to_json(self) -> dict:
        return {"orientable": self.orientable,
                "euler_characteristic": self.euler_characteristic,
                "boundary_components": self.boundary_components,
                "genus_or_crosscaps": self.genus_or_crosscaps,
                "components": [c._asdict() | {"vertices": list(c.vertices)}
                               for c in self.components]}


class _UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)


def _vertex_components(rd: RibbonDiagram) -> list[list[int]]:
    uf = _UnionFind()
    for v in rd.vertices:
        uf.find(v.id)
    for e in rd.edges:
        uf.union(e.a[0], e.b[0])
    groups: dict = {}
    for v in rd.vertices:
        groups.setdefault(uf.find(v.id), []).append(v.id)
    return sorted(groups.values(), key=lambda g: min(g))


def _boundary_classes(rd: RibbonDiagram) -> _UnionFind:
    """Union-find over dart sides ``(dart, 'L'|'R')`` whose classes are boundary circles."""
    uf = _UnionFind()
    for v in rd.vertices:
        rot = v.rotation
        for k, role in enumerate(rot):
            # the corner between a dart and its counterclockwise successor
            uf.union(((v.id, role), "L"), ((v.id, rot[(k + 1) % 4]), "R"))
    for e in rd.edges:
        if e.twist:
            uf.union((e.a, "L"), (e.b, "L"))
            uf.union((e.a, "R"), (e.b, "R"))
        else:
            uf.union((e.a, "L"), (e.b, "R"))
            uf.union((e.a, "R"), (e.b, "L"))
    return uf


def _orientable(rd: RibbonDiagram, verts: list[int]) -> bool:
    side = {verts[0]: 0}
    adj: dict = {v: [] for v in verts}
    for e in rd.edges:
        if e.a[0] in adj:
            adj[e.a[0]].append((e.b[0], e.twist))
            adj[e.b[0]].append((e.a[0], e.twist))
    stack = [verts[0]]
    while stack:
        u = stack.pop()
        for w, t in adj[u]:
            want = side[u] ^ t
            if w not in side:
                side[w] = want
                stack.append(w)
            elif side[w] != want:
                return False
    return True


def surface_invariants(rd: RibbonDiagram) -> SurfaceInvariants:
    uf = _boundary_classes(rd)
    out = []
    for verts in _vertex_components(rd):
        vs = set(verts)
        n_edges = sum(1 for e in rd.edges if e.a[0] in vs)
        chi = len(verts) - n_edges
        roots = {uf.find(((v, r), s)) for v in verts for r in ROLES for s in "LR"}
        b = len(roots)
        orient = _orientable(rd, verts)
        g = (2 - chi - b) // 2 if orient else 2 - chi - b
        out.append(ComponentSurface(tuple(verts), orient, chi, b, g))
    for parity in rd.free_loops:
        # annulus or Mobius band
        out.append(ComponentSurface((), not parity, 0, 1 if parity else 2, 1 if parity else 0))
    return SurfaceInvariants(tuple(out))


# ----------------------------------------------------- covers and gauges

def orientation_double_cover(rd: RibbonDiagram) -> RibbonDiagram:
    """Two copies of every disk, the second read in the mirrored frame.

    Vertex ``v`` lifts to ``2v - 1`` (sheet 0) and ``2v`` (sheet 1). A band
    with twist ``t`` joins sheet ``s`` at one end to sheet ``s ^ t`` at the
    other and is untwisted, so the total space is orientable.
    """
    def lift(vid, s):
        return 2 * vid - 1 + s

    verts = []
    for v in rd.vertices:
        verts.append(Vertex(lift(v.id, 0), v.rotation, v.orientation))
        verts.append(Vertex(lift(v.id, 1), tuple(reversed(v.rotation)), -v.orientation))
    edges = []
    for e in rd.edges:
        for s in (0, 1):
            edges.append(Edge((lift(e.a[0], s), e.a[1]), (lift(e.b[0], s ^ e.twist), e.b[1]), 0))
    loops = []
    for parity in rd.free_loops:
        loops.extend([0] if parity else [0, 0])
    return RibbonDiagram(tuple(verts), tuple(edges), tuple(loops))


def _map_vertex(rd: RibbonDiagram, vid: int, swap: bool, reverse: bool, flip: bool,
                toggle: bool) -> RibbonDiagram:
    def role(r):
        return _SWAP[r] if swap else r

    verts = []
    for v in rd.vertices:
        if v.id != vid:
            verts.append(v)
            continue
        rot = tuple(role(r) for r in v.rotation)
        if reverse:
            rot = tuple(reversed(rot))
        verts.append(Vertex(v.id, rot, -v.orientation if flip else v.orientation))
    edges = []
    for e in rd.edges:
        ends = []
        t = e.twist
        for d in (e.a, e.b):
            if d[0] == vid:
                ends.append((vid, role(d[1])))
                t ^= toggle
            else:
                ends.append(d)
        edges.append(Edge(ends[0], ends[1], t))
    return RibbonDiagram(tuple(verts), tuple(edges), rd.free_loops)


def invert(rd: RibbonDiagram, vid: int) -> RibbonDiagram:
    """Reverse the local orientation at a crossing and exchange over with under."""
    return _map_vertex(rd, vid, swap=True, reverse=False, flip=True, toggle=False)


def flip_frame(rd: RibbonDiagram, vid: int) -> RibbonDiagram:
    """Re-express a vertex in the opposite frame; the surface is unchanged."""
    return _map_vertex(rd, vid, swap=False, reverse=True, flip=True, toggle=True)


def normalize(rd: RibbonDiagram) -> RibbonDiagram:
    """Apply inversions until every local orientation agrees with its frame."""
    for v in rd.vertices:
        if v.orientation < 0:
            rd = invert(rd, v.id)
    return rd


MAX_ISO_CROSSINGS = 16


def _neighbours(rd: RibbonDiagram) -> dict:
    out = {}
    for e in rd.edges:
        out[e.a] = (e.b, e.twist)
        out[e.b] = (e.a, e.twist)
    return out


def _extend(a: RibbonDiagram, b: RibbonDiagram, na, nb, root: int, target: int, g0: int):
    """Grow the vertex map from ``root -> target`` with gauge ``g0``; None on conflict.

    Gauge 1 at a vertex means: exchange over/under, reverse the rotation and
    toggle incident twists. This keeps orientation bits, so it acts on
    normalized diagrams.
    """
    rot_a = {v.id: v.rotation for v in a.vertices}
    rot_b = {v.id: v.rotation for v in b.vertices}
    phi = {root: target}
    gauge = {root: g0}
    used = {target}
    stack = [root]

    def image_rot(vid):
        rot = rot_a[vid]
        if gauge[vid]:
            rot = tuple(reversed([_SWAP[r] for r in rot]))
        return rot

    if not _cyclic_equal(image_rot(root), rot_b[target]):
        return None
    while stack:
        u = stack.pop()
        for role in ROLES:
            (w, wrole), t = na[(u, role)]
            mrole = _SWAP[role] if gauge[u] else role
            (x, xrole), s = nb[(phi[u], mrole)]
            g = 0 if xrole == wrole else 1
            if g and _SWAP[wrole] != xrole:
                return None
            if w in phi:
                if phi[w] != x or gauge[w] != g:
                    return None
            else:
                if x in used:
                    return None
                phi[w] = x
                gauge[w] = g
                used.add(x)
                if not _cyclic_equal(image_rot(w), rot_b[x]):
                    return None
                stack.append(w)
            if t ^ gauge[u] ^ gauge[w] != s:
                return None
    return phi


def ribbon_isomorphic(a: RibbonDiagram, b: RibbonDiagram,
                      max_crossings: int = MAX_ISO_CROSSINGS) -> bool:
    """Whether two ribbon diagrams agree up to relabeling, frames and inversions.

    Each connected component of ``a`` is rooted at one vertex; the search
    tries every target vertex and gauge, and propagation along the darts
    then fixes the rest of the map. Raises :class:`RibbonSizeError` above
    ``max_crossings`` vertices.
    """
    for rd in (a, b):
        if len(rd.vertices) > max_crossings:
            raise RibbonSizeError(f"{len(rd.vertices)} crossings exceeds the limit "
                                  f"of {max_crossings}")
    if len(a.vertices) != len(b.vertices) or len(a.edges) != len(b.edges):
        return False
    if sorted(a.free_loops) != sorted(b.free_loops):
        return False
    a, b = normalize(a), normalize(b)
    na, nb = _neighbours(a), _neighbours(b)
    comps_b = _vertex_components(b)
    free = [True] * len(comps_b)
    for comp in _vertex_components(a):
        root = comp[0]
        found = False
        for k, cb in enumerate(comps_b):
            if not free[k] or len(cb) != len(comp):
                continue
            if any(_extend(a, b, na, nb, root, x, g) is not None for x in cb for g in (0, 1)):
                free[k] = False
                found = True
                break
        if not found:
            return False
    return True
