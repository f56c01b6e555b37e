from hypothesis import given, settings

from twistlink.cover import component_lift_counts, double_cover
from twistlink.gauss import (TwistedCode, canonical_form, involution_s, parse_code,
                             serialize_code, stats, validate)

from conftest import TREFOIL, codes


def test_unknot_lifts_to_two_circles():
    assert double_cover(parse_code("()")).cover.components == ((), ())


def test_bar_circle_lifts_to_one_circle():
    res = double_cover(parse_code("(*)"))
    assert serialize_code(res.cover) == "()"
    assert res.sheet_map == ((0, 1),)


def test_kink_with_bar_hand_trace():
    cover = double_cover(parse_code("(O1+ U1+ *)")).cover
    assert canonical_form(cover) == canonical_form(parse_code("(O1+ U1+ U2+ O2+)"))
    s = stats(cover)
    assert (s.component_count, s.crossing_count, s.writhe) == (1, 2, 2)


def test_barless_cover_is_code_plus_its_s_image():
    code = parse_code(TREFOIL)
    res = double_cover(code)
    first, second = (TwistedCode((c,)) for c in res.cover.components)
    assert first == code
    assert canonical_form(second) == canonical_form(involution_s(code))
    s = stats(res.cover)
    assert (s.crossing_count, s.writhe) == (6, 6)


def test_lift_counts():
    assert component_lift_counts(parse_code("()")) == [2]
    assert component_lift_counts(parse_code("(*)")) == [1]
    assert component_lift_counts(parse_code("(* *)")) == [2]
    assert component_lift_counts(parse_code("(*) () (O1+ * U1+)")) == [1, 2, 1]


def test_crossing_map_and_json():
    res = double_cover(parse_code("(O1+ * U1+ *)"))
    assert res.crossing_map == {1: (1, 1), 2: (1, 2)}
    data = res.to_json()
    assert data["cover"] == serialize_code(res.cover)
    assert data["crossing_map"] == {"1": [1, 1], "2": [1, 2]}


@settings(max_examples=300)
@given(codes())
def test_cover_laws(code):
    s = stats(code)
    res = double_cover(code)
    cs = stats(res.cover)
    assert validate(res.cover) == []
    assert res.cover.bar_count == 0
    assert cs.crossing_count == 2 * s.crossing_count
    assert cs.writhe == 2 * s.writhe
    assert cs.component_count == sum(component_lift_counts(code))
    # each source crossing has exactly one lift per sheet
    sources = sorted(res.crossing_map[c] for c in res.cover.signs())
    assert sources == sorted((c, sheet) for c in code.signs() for sheet in (1, 2))


@settings(max_examples=200)
@given(codes())
def test_cover_of_cover_is_two_copies(code):
    # a barless diagram lifts to itself plus its s-image, so covering twice doubles again
    cover = double_cover(code).cover
    twice = double_cover(cover).cover
    assert len(twice.components) == 2 * len(cover.components)
    assert stats(twice).writhe == 2 * stats(cover).writhe
