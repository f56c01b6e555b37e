import json
import random

import pytest
from hypothesis import given, settings

from twistlink.corpus import random_code
from twistlink.cover import double_cover
from twistlink.errors import RibbonSizeError, TwistLinkError
from twistlink.gauss import parse_code
from twistlink.ribbon import (Edge, RibbonDiagram, Vertex, abstract_diagram, flip_frame, invert,
                              normalize, orientation_double_cover, ribbon_isomorphic,
                              surface_invariants)

from conftest import TREFOIL, codes

MOBIUS = abstract_diagram(parse_code("(*)"))
ANNULUS = abstract_diagram(parse_code("()"))


def summary(rd):
    inv = surface_invariants(rd)
    return inv.orientable, inv.euler_characteristic, inv.boundary_components


def test_mobius_band():
    assert MOBIUS.free_loops == (1,)
    assert summary(MOBIUS) == (False, 0, 1)


def test_annulus():
    assert summary(ANNULUS) == (True, 0, 2)


def test_trefoil_surface():
    inv = surface_invariants(abstract_diagram(parse_code(TREFOIL)))
    assert (inv.orientable, inv.euler_characteristic, inv.boundary_components,
            inv.genus_or_crosscaps) == (True, -3, 5, 0)


def test_virtual_trefoil_lives_on_a_torus():
    inv = surface_invariants(abstract_diagram(parse_code("(O1+ O2+ U1+ U2+)")))
    assert inv.orientable and inv.genus_or_crosscaps == 1


def test_orientation_double_cover_examples():
    assert summary(orientation_double_cover(MOBIUS)) == (True, 0, 2)
    two = orientation_double_cover(ANNULUS)
    assert two.free_loops == (0, 0)
    tref = abstract_diagram(parse_code(TREFOIL))
    lifted = orientation_double_cover(tref)
    assert len(lifted.vertices) == 6
    inv = surface_invariants(lifted)
    assert len(inv.components) == 2 and all(c.genus_or_crosscaps == 0 for c in inv.components)


def test_isomorphism_examples():
    assert ribbon_isomorphic(MOBIUS, MOBIUS)
    assert not ribbon_isomorphic(MOBIUS, ANNULUS)
    code = parse_code("(O1+ U1+ *)")
    assert ribbon_isomorphic(abstract_diagram(double_cover(code).cover),
                             orientation_double_cover(abstract_diagram(code)))


def test_isomorphism_distinguishes_mirror_surfaces():
    a = abstract_diagram(parse_code("(O1+ O2+ U1+ U2+)"))
    b = abstract_diagram(parse_code("(O1+ U2+ O3+ U1+ O2+ U3+)"))
    assert not ribbon_isomorphic(a, b)


def test_size_limit():
    big = parse_code("(" + " ".join(f"O{k}+ U{k}+" for k in range(1, 18)) + ")")
    rd = abstract_diagram(big)
    with pytest.raises(RibbonSizeError):
        ribbon_isomorphic(rd, rd)
    assert ribbon_isomorphic(rd, rd, max_crossings=20)


def test_json_round_trip():
    rd = abstract_diagram(parse_code("(O1+ * U2- U1+ O2-) (*)"))
    back = RibbonDiagram.from_json(json.loads(json.dumps(rd.to_json())))
    assert back == rd


def test_malformed_ribbon_rejected():
    v = Vertex(1, ("oi", "ui", "oo", "uo"), 1)
    with pytest.raises(TwistLinkError):
        RibbonDiagram((v,), (Edge((1, "oo"), (1, "oi"), 0),))
    with pytest.raises(TwistLinkError):
        RibbonDiagram((Vertex(1, ("oi", "oo", "ui", "uo"), 1),),
                      (Edge((1, "oo"), (1, "oi"), 0), Edge((1, "uo"), (1, "ui"), 0)))


@settings(max_examples=150, deadline=None)
@given(codes(max_crossings=4))
def test_frame_changes_keep_the_surface(code):
    rd = abstract_diagram(code)
    base = surface_invariants(rd)
    for v in rd.vertices:
        flipped = flip_frame(rd, v.id)
        assert surface_invariants(flipped) == base
        assert ribbon_isomorphic(flipped, rd)
        assert surface_invariants(invert(rd, v.id)) == base
    assert surface_invariants(normalize(rd)) == base


@settings(max_examples=150, deadline=None)
@given(codes(max_crossings=5))
def test_classification_is_consistent(code):
    inv = surface_invariants(abstract_diagram(code))
    for c in inv.components:
        if c.orientable:
            assert c.euler_characteristic == 2 - 2 * c.genus_or_crosscaps - c.boundary_components
        else:
            assert c.euler_characteristic == 2 - c.genus_or_crosscaps - c.boundary_components
            assert c.genus_or_crosscaps >= 1
    if code.bar_count == 0:
        assert inv.orientable


@settings(max_examples=150, deadline=None)
@given(codes(max_crossings=4))
def test_double_cover_doubles_euler_characteristic(code):
    rd = abstract_diagram(code)
    odc = orientation_double_cover(rd)
    assert surface_invariants(odc).orientable
    assert surface_invariants(odc).euler_characteristic == 2 * surface_invariants(rd).euler_characteristic


def test_cover_surface_matches_orientation_cover_on_random_codes():
    rng = random.Random(11)
    for _ in range(120):
        code = random_code(rng, max_crossings=5, max_bars=4, max_components=2)
        assert ribbon_isomorphic(abstract_diagram(double_cover(code).cover),
                                 orientation_double_cover(abstract_diagram(code))), code
