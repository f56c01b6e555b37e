import json

import pytest

from twistlink.catalog import catalog_load, derivation_trace, entry_invariants
from twistlink.coloring import count_colorings
from twistlink.cover import double_cover
from twistlink.errors import CatalogError
from twistlink.gauss import parse_code, serialize_code
from twistlink.presentation import upper_quandle
from twistlink.targets import builtin_target

REQUIRED = {"unknot": "()", "unknot-bar": "(*)", "virtual-trefoil": "(O1+ O2+ U1+ U2+)",
            "kink-bar": "(O1+ U1+ *)"}


@pytest.fixture(scope="module")
def catalog():
    return catalog_load()


def by_name(catalog):
    return {e.name: e for e in catalog}


def test_builtin_contains_required_entries(catalog):
    names = by_name(catalog)
    for name, code in REQUIRED.items():
        assert serialize_code(names[name].code) == code
    for name in ("trefoil", "kishino", "kishino-bars", "fig5-left", "fig5-bottom-left"):
        assert name in names
    assert catalog_load("builtin") == catalog


def test_names_unique(catalog):
    assert len({e.name for e in catalog}) == len(catalog)


def test_kishino_has_four_crossings_and_no_bars(catalog):
    k = by_name(catalog)["kishino"].code
    assert k.crossing_count == 4 and k.bar_count == 0 and len(k.components) == 1
    assert k.is_virtual()
    assert by_name(catalog)["fig5-left"].code == k


def test_kishino_bars_cover_count_matches_unknot(catalog):
    names = by_name(catalog)
    r3 = builtin_target("R3")

    def cover_count(code):
        return count_colorings(upper_quandle(double_cover(code).cover), r3)
    assert cover_count(names["kishino-bars"].code) == cover_count(names["unknot"].code) == 9


def test_expectations_hold(catalog):
    for entry in catalog:
        assert entry_invariants(entry) == entry.expected, entry.name


def test_derivations_replay(catalog):
    traced = 0
    for entry in catalog:
        trace = derivation_trace(entry, catalog)
        if trace is None:
            continue
        traced += 1
        assert trace.replay() == trace.final
    assert traced == 2
    kb = derivation_trace(by_name(catalog)["kishino-bars"], catalog)
    assert serialize_code(kb.final) == "()"


def write(tmp_path, data):
    path = tmp_path / "cat.json"
    path.write_text(json.dumps(data) if not isinstance(data, str) else data)
    return str(path)


def test_user_catalog_loads(tmp_path):
    entries = catalog_load(write(tmp_path, [{"name": "kink", "code": "(O1+ U1+)"}]))
    assert entries[0].code == parse_code("(O1+ U1+)") and entries[0].notes == ""


@pytest.mark.parametrize("data", [
    [{"name": "a", "code": "()"}, {"name": "a", "code": "(*)"}],
    [{"name": "a"}],
    [{"name": "a", "code": "(O1+ O1+)"}],
    [{"name": "a", "code": "(O1+"}],
    [{"name": "a", "code": "()", "expected": {"colour": 3}}],
    {"name": "a", "code": "()"},
    "not json",
])
def test_bad_catalogs_rejected(tmp_path, data):
    with pytest.raises(CatalogError):
        catalog_load(write(tmp_path, data))


def test_missing_file(tmp_path):
    with pytest.raises(CatalogError):
        catalog_load(str(tmp_path / "nope.json"))


def test_to_json_round_trip(tmp_path, catalog):
    path = write(tmp_path, [e.to_json() for e in catalog])
    assert catalog_load(path) == catalog
