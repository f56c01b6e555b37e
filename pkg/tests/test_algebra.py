import json
import os
import subprocess
import sys

import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import invariant_factors

from twistlink import coloring
from twistlink.abelian import abelian_invariants, relation_matrix
from twistlink.coloring import count_colorings
from twistlink.errors import BudgetExceeded, PresentationError, TwistLinkError
from twistlink.gauss import BAR, TwistedCode, involution_s, parse_code, relabel
from twistlink.moves import random_walk
from twistlink.presentation import (GROUP, QUANDLE, Presentation, lower_group, parse_relation,
                                    presentation, semi_arcs, twisted_group, twisted_quandle,
                                    upper_group, upper_quandle)
from twistlink.targets import (builtin_names, builtin_target, group_from_table, load_target,
                               quandle_from_table)
from twistlink.verify import brute_force_count

from conftest import TREFOIL, codes

SMALL_GROUPS = ("Z2", "Z3", "S3")
SMALL_QUANDLES = ("R3", "T2")


def test_semi_arc_counts():
    assert len(semi_arcs(parse_code("()"))) == 1
    arcs = semi_arcs(parse_code("(*)"))
    assert len(arcs) == 1 and arcs[0].start is arcs[0].end
    assert len(semi_arcs(parse_code(TREFOIL))) == 6


def test_twisted_group_of_empty_circle_is_free():
    p = twisted_group(parse_code("()"))
    assert p.generators == ("x1", "y1") and p.relations == ()
    assert count_colorings(p, builtin_target("S3")) == 36


def test_twisted_group_of_bar_circle():
    p = twisted_group(parse_code("(*)"))
    assert p.generators == ("x1", "y1")
    assert p.relation_strings() == ["x1 = y1", "y1 = x1"]
    assert count_colorings(p, builtin_target("S3")) == 6


def test_quandle_examples():
    p = twisted_quandle(parse_code("()"))
    assert len(p.generators) == 2 and not p.relations
    assert count_colorings(twisted_quandle(parse_code("(*)")), builtin_target("R3")) == 3
    assert count_colorings(upper_quandle(parse_code(TREFOIL)), builtin_target("R3")) == 9


def test_trefoil_group_matches_two_generator_presentation():
    gens = ("a", "b")
    small = Presentation(GROUP, gens, (parse_relation("a b a = b a b", gens, GROUP),), "custom")
    big = upper_group(parse_code(TREFOIL))
    for name in ("Z2", "Z3", "S3", "D4"):
        t = builtin_target(name)
        assert count_colorings(big, t) == brute_force_count(small, t)
    assert brute_force_count(small, builtin_target("S3")) == 12


def test_upper_and_lower_need_barless_codes():
    with pytest.raises(PresentationError):
        upper_group(parse_code("(*)"))
    with pytest.raises(PresentationError):
        presentation(parse_code("(*)"), QUANDLE, "lower")
    with pytest.raises(PresentationError):
        presentation(parse_code("()"), "ring")


def test_relation_strings_round_trip():
    for p in (twisted_group(parse_code("(O1+ * U2- U1+ O2-)")),
              twisted_quandle(parse_code("(O1+ * U2- U1+ O2-)"))):
        back = Presentation.from_json(json.loads(json.dumps(p.to_json())))
        assert back.relations == p.relations and back.generators == p.generators


def test_parse_relation_errors():
    with pytest.raises(PresentationError):
        parse_relation("a = c", ("a", "b"), GROUP)
    with pytest.raises(PresentationError):
        parse_relation("a * = b", ("a", "b"), QUANDLE)
    assert parse_relation("a^-2 = 1", ("a",), GROUP) == (((0, -1), (0, -1)), ())


def test_flavor_mismatch_and_budget():
    p = upper_group(parse_code(TREFOIL))
    with pytest.raises(PresentationError):
        count_colorings(p, builtin_target("R3"))
    free = twisted_group(parse_code("() ()"))
    with pytest.raises(BudgetExceeded):
        count_colorings(free, builtin_target("S4"), budget=100)


@pytest.mark.parametrize("name", builtin_names())
def test_builtin_targets_satisfy_axioms(name):
    t = builtin_target(name)
    assert t.problems() == []


def test_target_examples():
    r3 = builtin_target("R3")
    assert r3.order == 3 and all(r3.table[a][a] == a for a in range(3))
    assert builtin_target("S3").order == 6
    assert builtin_target("Z2").order == 2
    with pytest.raises(TwistLinkError):
        builtin_target("S7")


def test_load_target_from_json(tmp_path):
    data = {"kind": "quandle", "name": "R3copy", "table": [list(r) for r in builtin_target("R3").table]}
    path = tmp_path / "r3.json"
    path.write_text(json.dumps(data))
    t = load_target(str(path))
    assert t.name == "R3copy"
    p = upper_quandle(parse_code(TREFOIL))
    assert count_colorings(p, t) == 9
    assert load_target(data).table == t.table


def test_bad_tables_rejected():
    with pytest.raises(TwistLinkError):
        group_from_table("bad", [[0, 1], [0, 1]])
    with pytest.raises(TwistLinkError):
        quandle_from_table("bad", [[1, 1], [0, 0]])
    with pytest.raises(TwistLinkError):
        load_target({"kind": "ring", "table": [[0]]})


def test_abelian_examples():
    assert abelian_invariants(twisted_group(parse_code("()"))) == (2, ())
    assert abelian_invariants(twisted_group(parse_code("(*)"))) == (1, ())
    assert abelian_invariants(upper_group(parse_code(TREFOIL))) == (1, ())
    with pytest.raises(PresentationError):
        abelian_invariants(twisted_quandle(parse_code("()")))


def _sympy_invariants(p):
    rows = relation_matrix(p)
    n = len(p.generators)
    if not rows:
        return n, ()
    factors = [abs(int(d)) for d in invariant_factors(sympy.Matrix(rows), domain=sympy.ZZ)]
    nonzero = [d for d in factors if d]
    return n - len(nonzero), tuple(d for d in nonzero if d > 1)


@settings(max_examples=120, deadline=None)
@given(codes(max_crossings=4, max_bars=4))
def test_abelian_matches_sympy(code):
    p = twisted_group(code)
    assert tuple(abelian_invariants(p)) == _sympy_invariants(p)


@settings(max_examples=40, deadline=None)
@given(codes(max_crossings=3, max_bars=3), st.integers(0, 10**6))
def test_abelian_invariant_under_moves(code, seed):
    final = random_walk(code, 8, seed, "kind").final
    assert abelian_invariants(twisted_group(final)) == abelian_invariants(twisted_group(code))


@settings(max_examples=40, deadline=None)
@given(codes(max_crossings=2, max_bars=1, max_components=1))
def test_search_matches_brute_force(code):
    g, q = twisted_group(code), twisted_quandle(code)
    for name in ("Z2", "Z3"):
        t = builtin_target(name)
        assert count_colorings(g, t) == brute_force_count(g, t)
    t = builtin_target("T2")
    assert count_colorings(q, t) == brute_force_count(q, t)


@settings(max_examples=60, deadline=None)
@given(codes(max_crossings=3, max_bars=2, max_components=1))
def test_barless_cover_presentations_match_brute_force(code):
    code = TwistedCode(tuple(tuple(s for s in comp if s is not BAR) for comp in code.components))
    p = upper_quandle(code)
    t = builtin_target("R3")
    assert count_colorings(p, t) == brute_force_count(p, t)


@pytest.mark.skipif(coloring._ckernel is None, reason="compiled kernel not built")
@settings(max_examples=100, deadline=None)
@given(codes(max_crossings=5, max_bars=4))
def test_python_and_compiled_kernels_agree(code):
    for p, names in ((twisted_group(code), SMALL_GROUPS + ("D4",)),
                     (twisted_quandle(code), SMALL_QUANDLES + ("R5",))):
        for name in names:
            t = builtin_target(name)
            assert count_colorings(p, t, kernel="python") == count_colorings(p, t, kernel="cython")


def test_pure_python_fallback_is_selected_by_environment():
    env = dict(os.environ, TWISTLINK_PURE_PYTHON="1")
    script = ("from twistlink import coloring as c; from twistlink.gauss import parse_code;"
              "from twistlink.presentation import upper_group; from twistlink.targets import builtin_target;"
              "print(c.KERNEL, c.COMPILER, c.count_colorings(upper_group("
              "parse_code('(O1+ U2+ O3+ U1+ O2+ U3+)')), builtin_target('S3')))")
    out = subprocess.run([sys.executable, "-c", script], env=env, capture_output=True, text=True,
                         check=True)
    assert out.stdout.split() == ["python", "python", "12"]


@pytest.mark.skipif(coloring.COMPILER != "cython", reason="compiled compiler not built")
@settings(max_examples=150, deadline=None)
@given(codes(max_crossings=5, max_bars=4))
def test_compiled_and_python_compilers_agree(code):
    from twistlink import _compiler, _compiler_c
    n = sum(len(c) or 1 for c in code.components)
    for is_group, name in ((True, "group_relations"), (False, "quandle_relations")):
        rels = getattr(_compiler, name)(code.components, True, True, True, n)
        assert rels == getattr(_compiler_c, name)(code.components, True, True, True, n)
        assert tuple(_compiler.compile_program(is_group, 2 * n, rels)) == \
            tuple(_compiler_c.compile_program(is_group, 2 * n, rels))


@settings(max_examples=100, deadline=None)
@given(codes(max_crossings=4, max_bars=2), st.data())
def test_counts_ignore_rotation_relabel_and_component_order(code, data):
    # justifies checking one representative per symmetry class of codes
    comps = []
    for comp in code.components:
        k = data.draw(st.integers(0, max(len(comp) - 1, 0)))
        comps.append(comp[k:] + comp[:k])
    order = data.draw(st.permutations(range(len(comps))))
    moved = relabel(TwistedCode(tuple(comps[i] for i in order)))
    for build, names in ((twisted_group, ("Z3", "S3")), (twisted_quandle, ("R3", "R4"))):
        for name in names:
            t = builtin_target(name)
            assert count_colorings(build(moved), t) == count_colorings(build(code), t)


def test_lower_group_is_upper_of_s_image():
    code = parse_code("(O1+ U2- U1+ O2- U3- O4+ O3- U4+)")
    for name in ("S3", "D4"):
        t = builtin_target(name)
        assert count_colorings(lower_group(code), t) == \
            count_colorings(upper_group(involution_s(code)), t)
