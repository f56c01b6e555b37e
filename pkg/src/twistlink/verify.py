"""Verification suites over generated corpora and the catalog.

Every suite returns :class:`SuiteResult` records; :func:`verify` runs a
selection and returns them sorted by suite and subject so reports are
stable. All randomness is drawn from ``random.Random(seed)``.
"""
from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from . import moves as _moves
from .abelian import abelian_invariants
from .catalog import CatalogEntry, catalog_load, derivation_trace, entry_invariants
from .coloring import count_colorings
from .corpus import generate_corpus, random_code
from .cover import component_lift_counts, double_cover
from .gauss import (TwistedCode, crossing_change_c, involution_s, parse_code, reflect_r,
                    serialize_code, stats, validate)
from .presentation import (GROUP, Presentation, lower_group, lower_quandle, parse_relation,
                           twisted_group, twisted_quandle, upper_group, upper_quandle)
from .ribbon import abstract_diagram, orientation_double_cover, ribbon_isomorphic
from .targets import GROUP_TARGETS, QUANDLE_TARGETS, FiniteTarget, builtin_target

__all__ = ["SuiteResult", "SUITES", "SUITE_ALIASES", "verify", "brute_force_count", "invariant_battery",
           "walk_invariants"]

MAX_FAILURES = 10
FUZZ_GROUPS = ("Z2", "Z3", "S3", "D4")
FUZZ_QUANDLES = ("R3", "R5")
CORPUS_GROUPS = ("Z2", "Z3", "S3", "D4")
CORPUS_QUANDLES = ("R3", "R4", "R5")


@dataclass
class SuiteResult:
    suite: str
    subject: str
    passed: bool = True
    checked: int = 0
    failures: list = field(default_factory=list)
    seconds: float = 0.0

    def fail(self, message: str):
        self.passed = False
        if len(self.failures) < MAX_FAILURES:
            self.failures.append(message)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.suite} [{self.subject}] checked={self.checked}"

    def to_json(self) -> dict:
        return {"suite": self.suite, "subject": self.subject, "passed": self.passed,
                "checked": self.checked, "failures": list(self.failures),
                "seconds": round(self.seconds, 3)}


def _targets(names) -> list[FiniteTarget]:
    return [builtin_target(n) for n in names]


def _counts(p: Presentation, targets) -> tuple[int, ...]:
    return tuple(count_colorings(p, t) for t in targets)


# ------------------------------------------------------------------ oracles

def brute_force_count(p: Presentation, t: FiniteTarget) -> int:
    """Hom count by trying every generator assignment; exponential, for oracles only."""
    if p.flavor != t.kind:
        raise ValueError("flavor mismatch")
    T, aux = t.table, t.aux

    def word(w, a):
        x = t.identity
        for g, e in w:
            x = T[x][a[g] if e > 0 else aux[a[g]]]
        return x

    def term(side, a):
        head, ops = side
        x = a[head]
        for op, g in ops:
            x = T[x][a[g]] if op == 0 else aux[x][a[g]]
        return x

    ev = word if p.flavor == GROUP else term
    return sum(1 for a in itertools.product(range(t.order), repeat=len(p.generators))
               if all(ev(l, a) == ev(r, a) for l, r in p.relations))


def invariant_battery(code: TwistedCode) -> dict:
    """Every built-in coloring count of the twisted presentations, plus abelian and cover data."""
    g, q = twisted_group(code), twisted_quandle(code)
    out = {f"group:{n}": count_colorings(g, builtin_target(n)) for n in GROUP_TARGETS}
    out.update({f"quandle:{n}": count_colorings(q, builtin_target(n)) for n in QUANDLE_TARGETS})
    out["abelian"] = str(abelian_invariants(g))
    out["cover_components"] = len(double_cover(code).cover.components)
    return out


def walk_invariants(code: TwistedCode, groups, quandles) -> tuple[int, ...]:
    return _counts(twisted_group(code), groups) + _counts(twisted_quandle(code), quandles)


# ------------------------------------------------------------ corpus suites

def _corpus_label(bounds) -> str:
    n, b, k = bounds
    return f"corpus c<={n} b<={b} k<={k}"


def _over_corpus(name: str, bounds, check: Callable[[TwistedCode, SuiteResult], None],
                 only=None) -> list[SuiteResult]:
    res = SuiteResult(name, _corpus_label(bounds))
    t0 = time.perf_counter()
    for code in generate_corpus(*bounds):
        if only is not None and not only(code):
            continue
        res.checked += 1
        check(code, res)
    res.seconds = time.perf_counter() - t0
    return [res]


def suite_cover_group(bounds, **_) -> list[SuiteResult]:
    targets = _targets(CORPUS_GROUPS)

    def check(code, res):
        cover = double_cover(code).cover
        a, b = _counts(twisted_group(code), targets), _counts(upper_group(cover), targets)
        if a != b:
            res.fail(f"{serialize_code(code)}: twisted {a} vs cover upper {b}")
    return _over_corpus("cover-group", bounds, check)


def suite_cover_quandle(bounds, **_) -> list[SuiteResult]:
    targets = _targets(CORPUS_QUANDLES)

    def check(code, res):
        cover = double_cover(code).cover
        a, b = _counts(twisted_quandle(code), targets), _counts(upper_quandle(cover), targets)
        if a != b:
            res.fail(f"{serialize_code(code)}: twisted {a} vs cover upper {b}")
    return _over_corpus("cover-quandle", bounds, check)


def suite_upper_lower(bounds, **_) -> list[SuiteResult]:
    groups, quandles = _targets(CORPUS_GROUPS), _targets(CORPUS_QUANDLES)

    def check(code, res):
        cover = double_cover(code).cover
        up = _counts(upper_group(cover), groups) + _counts(upper_quandle(cover), quandles)
        low = _counts(lower_group(cover), groups) + _counts(lower_quandle(cover), quandles)
        if up != low:
            res.fail(f"{serialize_code(cover)}: upper {up} vs lower {low}")
    return _over_corpus("upper-lower", bounds, check)


def suite_free_product(bounds, **_) -> list[SuiteResult]:
    groups = _targets(CORPUS_GROUPS)

    def check(code, res):
        tw = _counts(twisted_group(code), groups)
        up, low = _counts(upper_group(code), groups), _counts(lower_group(code), groups)
        prod = tuple(u * l for u, l in zip(up, low))
        if tw != prod:
            res.fail(f"{serialize_code(code)}: twisted {tw} vs upper*lower {prod}")
    return _over_corpus("free-product", bounds, check, only=lambda c: c.bar_count == 0)


# ----------------------------------------------------------- catalog suites

def _writhe(code) -> int:
    return stats(code).writhe


def suite_writhe(catalog: list[CatalogEntry], **_) -> list[SuiteResult]:
    out = []
    for entry in catalog:
        res = SuiteResult("writhe", entry.name)
        t0 = time.perf_counter()
        base = _writhe(double_cover(entry.code).cover)
        space = _moves.MoveSpace(entry.code)
        ranges = space.kinds()
        sites = [space[i] for kind in (_moves.MoveKind.R1_INSERT, _moves.MoveKind.R1_DELETE)
                 for i in ranges.get(kind, ())]
        for site in sites:
            after = _moves.apply_move(entry.code, site)
            delta = _writhe(double_cover(after).cover) - base
            res.checked += 1
            if delta not in (2, -2):
                res.fail(f"{site}: cover writhe changed by {delta}")
        res.seconds = time.perf_counter() - t0
        out.append(res)
    return out


def suite_ribbon(catalog: list[CatalogEntry], max_ribbon_crossings: int = 6, **_) -> list[SuiteResult]:
    out = []
    for entry in catalog:
        if entry.code.crossing_count > max_ribbon_crossings:
            continue
        res = SuiteResult("ribbon", entry.name)
        t0 = time.perf_counter()
        lifted = abstract_diagram(double_cover(entry.code).cover)
        odc = orientation_double_cover(abstract_diagram(entry.code))
        res.checked = 1
        if not ribbon_isomorphic(lifted, odc):
            res.fail("abstract diagram of the cover differs from the orientation double cover")
        res.seconds = time.perf_counter() - t0
        out.append(res)
    return out


def suite_trivial_bars(catalog: list[CatalogEntry], **_) -> list[SuiteResult]:
    res = SuiteResult("trivial-bars", "kishino-bars")
    t0 = time.perf_counter()
    by_name = {e.name: e for e in catalog}
    if "kishino-bars" not in by_name or "unknot" not in by_name:
        res.fail("catalog lacks 'kishino-bars' or 'unknot'")
        return [res]
    a = invariant_battery(by_name["kishino-bars"].code)
    b = invariant_battery(by_name["unknot"].code)
    for key in sorted(a):
        res.checked += 1
        if a[key] != b[key]:
            res.fail(f"{key}: kishino-bars {a[key]} vs unknot {b[key]}")
    res.seconds = time.perf_counter() - t0
    return [res]


def suite_catalog(catalog: list[CatalogEntry], **_) -> list[SuiteResult]:
    """Recorded expectations and derivations of each entry."""
    out = []
    for entry in catalog:
        res = SuiteResult("catalog", entry.name)
        got = entry_invariants(entry)
        for key, want in sorted(entry.expected.items()):
            res.checked += 1
            if got[key] != want:
                res.fail(f"{key}: expected {want}, got {got[key]}")
        trace = derivation_trace(entry, catalog)
        if trace is not None:
            res.checked += 1
            if trace.replay() != trace.final:
                res.fail("recorded derivation does not replay to its endpoint")
        out.append(res)
    return out


# ----------------------------------------------------------------- fuzzing

def suite_moves(catalog: list[CatalogEntry], seed: int = 0, walks: int = 200, steps: int = 15,
                balances=("site", "kind"), groups=FUZZ_GROUPS, quandles=FUZZ_QUANDLES,
                fail_fast: bool = False, **_) -> list[SuiteResult]:
    """Seeded walks from each entry; invariants are compared after every move.

    Each balance mode gets ``walks`` walks, so rare move kinds are exercised
    as well as the uniform draw.
    """
    gt, qt = _targets(groups), _targets(quandles)
    out = []
    for ei, entry in enumerate(catalog):
        res = SuiteResult("moves", entry.name)
        t0 = time.perf_counter()
        base = walk_invariants(entry.code, gt, qt)
        for bi, balance in enumerate(balances):
            for w in range(walks):
                walk_seed = seed * 1_000_003 + ei * 10_007 + bi * 100_003 + w
                trace = _moves.random_walk(entry.code, steps, walk_seed, balance)
                code = entry.code
                for site in trace.steps:
                    nxt = _moves.apply_move(code, site)
                    res.checked += 1
                    bad = validate(nxt)
                    if bad:
                        res.fail(f"{site} on {serialize_code(code)} gave invalid code: {bad[0]}")
                        break
                    if walk_invariants(nxt, gt, qt) != base:
                        res.fail(f"{site.kind.value}: {serialize_code(code)} -> "
                                 f"{serialize_code(nxt)} (seed {walk_seed}, {balance})")
                        break
                    code = nxt
                if fail_fast and not res.passed:
                    break
            if fail_fast and not res.passed:
                break
        res.seconds = time.perf_counter() - t0
        out.append(res)
        if fail_fast and not res.passed:
            break
    return out


# ------------------------------------------------------- values and laws

_TREFOIL = "(O1+ U2+ O3+ U1+ O2+ U3+)"
KNOWN_VALUES = (
    ("upper_group(trefoil) -> S3", lambda: upper_group(parse_code(_TREFOIL)), "S3", 12),
    ("upper_quandle(trefoil) -> R3", lambda: upper_quandle(parse_code(_TREFOIL)), "R3", 9),
    ("twisted_group((*)) -> S3", lambda: twisted_group(parse_code("(*)")), "S3", 6),
)


def suite_known(**_) -> list[SuiteResult]:
    out = []
    for label, build, target, frozen in KNOWN_VALUES:
        res = SuiteResult("known", label)
        t0 = time.perf_counter()
        p, t = build(), builtin_target(target)
        brute = brute_force_count(p, t)
        fast = count_colorings(p, t)
        res.checked = 3
        if brute != frozen:
            res.fail(f"brute force gives {brute}, frozen value {frozen}")
        if fast != brute:
            res.fail(f"search gives {fast}, brute force {brute}")
        res.seconds = time.perf_counter() - t0
        out.append(res)
    # the two-generator trefoil group as a second oracle
    res = SuiteResult("known", "<a,b | aba = bab> -> S3")
    gens = ("a", "b")
    p = Presentation(GROUP, gens, (parse_relation("a b a = b a b", gens, GROUP),), "custom")
    res.checked = 1
    if brute_force_count(p, builtin_target("S3")) != 12:
        res.fail("two-generator trefoil group does not give 12")
    out.append(res)
    return out


def suite_structural(seed: int = 0, samples: int = 1000, **_) -> list[SuiteResult]:
    t0 = time.perf_counter()
    rng = random.Random(seed)
    codes = [random_code(rng) for _ in range(samples)]
    res_cover = SuiteResult("structural", "cover laws")
    res_inv = SuiteResult("structural", "involutions")
    res_rt = SuiteResult("structural", "round trip")
    for code in codes:
        s = stats(code)
        cov = double_cover(code)
        cs = stats(cov.cover)
        res_cover.checked += 1
        lifts = component_lift_counts(code)
        if cov.cover.bar_count:
            res_cover.fail(f"{code}: cover has bars")
        if cs.crossing_count != 2 * s.crossing_count:
            res_cover.fail(f"{code}: cover has {cs.crossing_count} crossings")
        if cs.writhe != 2 * s.writhe:
            res_cover.fail(f"{code}: cover writhe {cs.writhe}")
        if len(cov.cover.components) != sum(lifts) or \
                any(l != (1 if b % 2 else 2) for l, b in zip(lifts, s.bar_count_per_component)):
            res_cover.fail(f"{code}: lift counts {lifts} disagree with bar parity")
        res_inv.checked += 1
        r, c, si = reflect_r(code), crossing_change_c(code), involution_s(code)
        if reflect_r(r) != code or crossing_change_c(c) != code or involution_s(si) != code:
            res_inv.fail(f"{code}: not an involution")
        if si != crossing_change_c(r) or si != reflect_r(c):
            res_inv.fail(f"{code}: s differs from c.r or r.c")
        if stats(r).writhe != -s.writhe or stats(si).writhe != s.writhe:
            res_inv.fail(f"{code}: writhe law fails")
        res_rt.checked += 1
        if parse_code(serialize_code(code)) != code:
            res_rt.fail(f"{code}: round trip changed the code")
    res_cover.seconds = time.perf_counter() - t0
    return [res_cover, res_inv, res_rt]


SUITES: dict[str, Callable[..., list[SuiteResult]]] = {
    "catalog": suite_catalog,
    "cover-group": suite_cover_group,
    "cover-quandle": suite_cover_quandle,
    "free-product": suite_free_product,
    "known": suite_known,
    "moves": suite_moves,
    "ribbon": suite_ribbon,
    "structural": suite_structural,
    "trivial-bars": suite_trivial_bars,
    "upper-lower": suite_upper_lower,
    "writhe": suite_writhe,
}
# historical names accepted on the command line
SUITE_ALIASES = {"theorem61": "cover-group"}


def verify(suites: Iterable[str] | None = None, *, catalog: list[CatalogEntry] | None = None,
           max_crossings: int = 4, max_bars: int = 2, max_components: int = 2,
           seed: int = 0, walks: int = 200, steps: int = 15, fail_fast: bool = False,
           ) -> list[SuiteResult]:
    """Run the named suites (all when None) and return results in canonical order."""
    names = sorted(SUITES) if suites is None else \
        sorted({SUITE_ALIASES.get(n, n) for n in suites})
    unknown = [n for n in names if n not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
    if catalog is None:
        catalog = catalog_load()
    kwargs = dict(catalog=catalog, bounds=(max_crossings, max_bars, max_components),
                  seed=seed, walks=walks, steps=steps, fail_fast=fail_fast)
    results = []
    for name in names:
        results.extend(SUITES[name](**kwargs))
    return sorted(results, key=lambda r: (r.suite, r.subject))
