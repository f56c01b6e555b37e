"""Each deliberately broken move must be caught by the move-invariance suite."""
import pytest

from twistlink import moves
from twistlink.catalog import catalog_load
from twistlink.gauss import BAR, CrossPass, TwistedCode
from twistlink.moves import MoveKind
from twistlink.verify import suite_moves

REAL_APPLY = moves.apply_move


def remap(code, fn):
    return TwistedCode(tuple(tuple(s if s is BAR else fn(s) for s in comp)
                             for comp in code.components))


def flip_sign(code, c):
    return remap(code, lambda s: CrossPass(s.crossing, s.over, -s.sign) if s.crossing == c else s)


def swap_markers(code, c):
    return remap(code, lambda s: s.swapped() if s.crossing == c else s)


def t3_without_swap(code, site):
    out = REAL_APPLY(code, site)
    return swap_markers(out, site.params[0]) if site.kind is MoveKind.T3 else out


def t3_flipping_sign(code, site):
    out = REAL_APPLY(code, site)
    return flip_sign(out, site.params[0]) if site.kind is MoveKind.T3 else out


def r3_flipping_sign(code, site):
    out = REAL_APPLY(code, site)
    return flip_sign(out, site.params[2]) if site.kind is MoveKind.R3 else out


def r3_partial(code, site):
    # only the top strand is rewritten
    out = REAL_APPLY(code, site)
    if site.kind is not MoveKind.R3:
        return out
    comps = [list(c) for c in code.components]
    ci, p = site.location[0]
    n = len(comps[ci])
    comps[ci][p], comps[ci][(p + 1) % n] = comps[ci][(p + 1) % n], comps[ci][p]
    return TwistedCode(tuple(tuple(c) for c in comps))


def r2_same_sign(code, site):
    out = REAL_APPLY(code, site)
    if site.kind is not MoveKind.R2_INSERT:
        return out
    return flip_sign(out, code.max_crossing_id() + 2)


def t1_single_bar(code, site):
    if site.kind is not MoveKind.T1_INSERT:
        return REAL_APPLY(code, site)
    (ci, gap), = site.location
    comps = [list(c) for c in code.components]
    comps[ci].insert(gap, BAR)
    return TwistedCode(tuple(tuple(c) for c in comps))


def r1_with_bar(code, site):
    if site.kind is not MoveKind.R1_INSERT:
        return REAL_APPLY(code, site)
    (ci, gap), = site.location
    first_over, sign = site.params
    fresh = code.max_crossing_id() + 1
    comps = [list(c) for c in code.components]
    comps[ci][gap:gap] = [CrossPass(fresh, first_over, sign), BAR,
                          CrossPass(fresh, not first_over, sign)]
    return TwistedCode(tuple(tuple(c) for c in comps))


MUTANTS = [t3_without_swap, t3_flipping_sign, r3_flipping_sign, r3_partial, r2_same_sign,
           t1_single_bar, r1_with_bar]


@pytest.fixture(scope="module")
def catalog():
    return catalog_load()


def test_real_moves_pass_a_short_run(catalog):
    results = suite_moves(catalog, walks=10)
    assert all(r.passed for r in results)


@pytest.mark.parametrize("mutant", MUTANTS, ids=lambda f: f.__name__)
def test_mutant_is_detected(monkeypatch, catalog, mutant):
    monkeypatch.setattr(moves, "apply_move", mutant)
    results = suite_moves(catalog, fail_fast=True)
    assert not all(r.passed for r in results), f"{mutant.__name__} slipped through"
