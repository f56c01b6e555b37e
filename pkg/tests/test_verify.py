import pytest

from twistlink.catalog import CatalogEntry, catalog_load
from twistlink.gauss import parse_code
from twistlink.presentation import twisted_group
from twistlink.targets import builtin_target
from twistlink.verify import (SUITES, SuiteResult, brute_force_count, invariant_battery, verify)


def test_results_are_sorted_and_serialisable():
    results = verify(["writhe", "known", "catalog"])
    keys = [(r.suite, r.subject) for r in results]
    assert keys == sorted(keys)
    assert all(r.passed for r in results)
    data = results[0].to_json()
    assert set(data) == {"suite", "subject", "passed", "checked", "failures", "seconds"}


def test_alias_and_unknown_suite():
    results = verify(["theorem61"], max_crossings=1, max_bars=1, max_components=1)
    assert [r.suite for r in results] == ["cover-group"] and results[0].passed
    with pytest.raises(ValueError):
        verify(["nope"])


def test_small_corpus_suites_pass():
    for name in ("cover-group", "cover-quandle", "upper-lower", "free-product"):
        (res,) = verify([name], max_crossings=2, max_bars=1, max_components=2)
        assert res.passed and res.checked > 0, res.failures


def test_seeded_suites_are_deterministic():
    def run():
        return [(r.suite, r.subject, r.checked, r.failures)
                for r in verify(["structural", "moves"], seed=7, walks=3, steps=5)]
    assert run() == run()


def test_catalog_suite_reports_wrong_expectations():
    bad = [CatalogEntry("liar", parse_code("(O1+ U1+)"), expected={"writhe": 5})]
    (res,) = SUITES["catalog"](catalog=bad)
    assert not res.passed and "writhe" in res.failures[0]


def test_trivial_bars_needs_its_entries():
    (res,) = SUITES["trivial-bars"](catalog=[])
    assert not res.passed


def test_failure_list_is_capped():
    res = SuiteResult("x", "y")
    for k in range(50):
        res.fail(str(k))
    assert not res.passed and len(res.failures) == 10
    assert res.line().startswith("FAIL x [y]")


def test_brute_force_oracle():
    p = twisted_group(parse_code("(*)"))
    assert brute_force_count(p, builtin_target("S3")) == 6
    with pytest.raises(ValueError):
        brute_force_count(p, builtin_target("R3"))


def test_battery_separates_unknot_from_trefoil():
    cat = {e.name: e.code for e in catalog_load()}
    assert invariant_battery(cat["unknot"]) != invariant_battery(cat["trefoil"])
    assert invariant_battery(cat["kishino-bars"]) == invariant_battery(cat["unknot"])


def test_cover_group_suite_catches_a_mirrored_lower_rule(monkeypatch):
    from twistlink import _native
    from twistlink.gauss import BAR, CrossPass

    real = _native.compiler.group_relations

    def mirrored(components, upper, lower, bars, shift):
        if not (upper and lower):
            return real(components, upper, lower, bars, shift)
        flipped = tuple(tuple(s if s is BAR else CrossPass(s.crossing, s.over, -s.sign)
                              for s in comp) for comp in components)
        return (real(components, True, False, False, shift)
                + real(flipped, False, True, False, shift)
                + real(components, False, False, True, shift))

    monkeypatch.setattr(_native.compiler, "group_relations", mirrored)
    (res,) = verify(["cover-group"], max_crossings=2, max_bars=2, max_components=1)
    assert not res.passed
