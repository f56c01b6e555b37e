"""``tlk`` command-line interface.

Exit status: 0 on success, 1 on a domain error or a failed check, 2 on a
usage error.
"""
from __future__ import annotations

import argparse
import json
import sys

from . import moves as _moves
from .abelian import abelian_invariants
from .catalog import catalog_load
from .coloring import count_colorings
from .cover import double_cover
from .errors import CodeValidationError, TwistLinkError
from .gauss import parse_code, serialize_code, stats, validate
from .presentation import GROUP, QUANDLE, presentation
from .ribbon import abstract_diagram, orientation_double_cover, surface_invariants
from .targets import builtin_names, builtin_target, load_target
from .verify import FUZZ_GROUPS, SUITE_ALIASES, SUITES, suite_moves, verify

FUZZ_TARGETS = FUZZ_GROUPS + ("R3",)


class UsageError(Exception):
    pass


def _emit(args, data, text: str):
    if args.json:
        print(json.dumps(data, sort_keys=True))
    else:
        print(text)


def _code(args, check: bool = True):
    if getattr(args, "name", None):
        if args.code:
            raise UsageError("give either a code or --name, not both")
        entries = {e.name: e for e in catalog_load(args.catalog)}
        if args.name not in entries:
            raise TwistLinkError(f"no catalog entry named {args.name!r}")
        return entries[args.name].code
    if not args.code:
        raise UsageError("a code or --name is required")
    return parse_code(args.code, check=check)


def _target(spec: str):
    kind, sep, name = spec.partition(":")
    if sep and kind in (GROUP, QUANDLE):
        t = builtin_target(name)
        if t.kind != kind:
            raise TwistLinkError(f"{name} is a {t.kind}, not a {kind}")
        return t
    try:
        return load_target(spec)
    except (OSError, ValueError, KeyError) as exc:
        raise UsageError(f"--target expects group:<name>, quandle:<name> or a JSON file ({exc})")


# ---------------------------------------------------------------- commands

def cmd_validate(args) -> int:
    code = _code(args, check=False)
    problems = validate(code)
    data = {"valid": not problems, "violations": [str(v) for v in problems]}
    _emit(args, data, "valid" if not problems else "\n".join(str(v) for v in problems))
    return 0 if not problems else 1


def cmd_stats(args) -> int:
    s = stats(_code(args))
    data = s._asdict()
    text = (f"crossings {s.crossing_count}\nwrithe {s.writhe}\n"
            f"components {s.component_count}\nbars per component {s.bar_count_per_component}")
    _emit(args, data, text)
    return 0


def cmd_cover(args) -> int:
    res = double_cover(_code(args))
    _emit(args, res.to_json(), serialize_code(res.cover))
    return 0


def cmd_surface(args) -> int:
    rd = abstract_diagram(_code(args))
    if args.orientation_cover:
        rd = orientation_double_cover(rd)
    inv = surface_invariants(rd)
    data = inv.to_json()
    if args.ribbon:
        data["ribbon"] = rd.to_json()
    lines = [f"orientable {inv.orientable}", f"euler characteristic {inv.euler_characteristic}",
             f"boundary components {inv.boundary_components}",
             f"{'genus' if inv.orientable else 'genus/crosscaps'} {inv.genus_or_crosscaps}"]
    _emit(args, data, "\n".join(lines))
    return 0


def _presentation_cmd(args, flavor: str) -> int:
    p = presentation(_code(args), flavor, args.variant)
    data = p.to_json()
    text = "generators: " + " ".join(p.generators) + "\n" + "\n".join(p.relation_strings())
    _emit(args, data, text)
    return 0


def cmd_group(args) -> int:
    return _presentation_cmd(args, GROUP)


def cmd_quandle(args) -> int:
    return _presentation_cmd(args, QUANDLE)


def cmd_color(args) -> int:
    if not args.target:
        raise UsageError("color needs --target")
    t = _target(args.target)
    p = presentation(_code(args), t.kind, args.variant)
    n = count_colorings(p, t, budget=args.budget)
    _emit(args, {"count": n, "flavor": t.kind, "target": t.name, "variant": args.variant}, str(n))
    return 0


def cmd_abelian(args) -> int:
    inv = abelian_invariants(presentation(_code(args), GROUP, args.variant))
    _emit(args, {"free_rank": inv.free_rank, "torsion": list(inv.torsion)}, str(inv))
    return 0


def cmd_moves(args) -> int:
    if args.replay:
        try:
            with open(args.replay) as fh:
                trace = _moves.MoveTrace.from_json(fh.read())
        except OSError as exc:
            raise TwistLinkError(f"cannot read trace: {exc}") from exc
        except (KeyError, TypeError, AttributeError, ValueError) as exc:
            if isinstance(exc, TwistLinkError):
                raise
            raise TwistLinkError(f"malformed trace file: {exc!r}") from exc
        final = trace.replay()
        ok = final == trace.final
        _emit(args, {"final": serialize_code(final), "matches": ok},
              serialize_code(final) + ("" if ok else "\n(recorded final differs)"))
        return 0 if ok else 1
    code = _code(args)
    sites = _moves.enumerate_moves(code)
    if args.kind:
        sites = [s for s in sites if s.kind.value == args.kind]
    if args.apply is not None:
        if not 0 <= args.apply < len(sites):
            raise TwistLinkError(f"site index {args.apply} out of range (0..{len(sites) - 1})")
        out = _moves.apply_move(code, sites[args.apply])
        _emit(args, {"site": sites[args.apply].to_json(), "result": serialize_code(out)},
              serialize_code(out))
        return 0
    _emit(args, [s.to_json() for s in sites], "\n".join(f"{i}: {s}" for i, s in enumerate(sites)))
    return 0


def cmd_fuzz(args) -> int:
    if args.trace:
        trace = _moves.random_walk(_code(args), args.steps, args.seed, args.balance_mode())
        _emit(args, trace.to_json(), json.dumps(trace.to_json(), indent=2))
        return 0
    entries = catalog_load(args.catalog)
    if args.name or args.code:
        from .catalog import CatalogEntry
        code = _code(args)
        entries = [CatalogEntry(args.name or serialize_code(code), code)]
    targets = [builtin_target(n) for n in (args.targets or ",".join(FUZZ_TARGETS)).split(",")]
    results = suite_moves(entries, seed=args.seed, walks=args.walks, steps=args.steps,
                          balances=args.balances(),
                          groups=[t.name for t in targets if t.kind == GROUP],
                          quandles=[t.name for t in targets if t.kind == QUANDLE])
    results.sort(key=lambda r: (r.suite, r.subject))
    _emit(args, [r.to_json() for r in results], "\n".join(_report(r) for r in results))
    return 0 if all(r.passed for r in results) else 1


def _report(r) -> str:
    lines = [r.line()]
    lines += [f"    {f}" for f in r.failures]
    return "\n".join(lines)


def cmd_verify(args) -> int:
    suites = args.suite or None
    results = verify(suites, catalog=catalog_load(args.catalog),
                     max_crossings=args.max_crossings, max_bars=args.max_bars,
                     max_components=args.max_components, seed=args.seed,
                     walks=args.walks, steps=args.steps)
    _emit(args, [r.to_json() for r in results], "\n".join(_report(r) for r in results))
    return 0 if all(r.passed for r in results) else 1


def cmd_catalog(args) -> int:
    entries = catalog_load(args.catalog)
    if args.name:
        entries = [e for e in entries if e.name == args.name]
        if not entries:
            raise TwistLinkError(f"no catalog entry named {args.name!r}")
    _emit(args, [e.to_json() for e in entries],
          "\n".join(f"{e.name}\t{serialize_code(e.code)}\t{e.notes}" for e in entries))
    return 0


# ------------------------------------------------------------------ parser

def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--catalog", default=None, help="catalog JSON file (default: built-in)")

    coded = argparse.ArgumentParser(add_help=False, parents=[common])
    coded.add_argument("code", nargs="?", help='code such as "(O1+ U1+ *)"')
    coded.add_argument("--name", help="use a catalog entry instead of a code")

    variant = argparse.ArgumentParser(add_help=False)
    variant.add_argument("--variant", choices=("twisted", "upper", "lower"), default="twisted")

    ap = argparse.ArgumentParser(prog="tlk", description="Twisted link diagram toolkit.")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", parents=[coded], help="list broken code invariants")
    p.set_defaults(func=cmd_validate)
    p = sub.add_parser("stats", parents=[coded], help="crossings, writhe, bars")
    p.set_defaults(func=cmd_stats)
    p = sub.add_parser("cover", parents=[coded], help="double covering diagram")
    p.set_defaults(func=cmd_cover)
    p = sub.add_parser("surface", parents=[coded], help="surface of the abstract diagram")
    p.add_argument("--orientation-cover", action="store_true",
                   help="use the orientation double cover of the ribbon surface")
    p.add_argument("--ribbon", action="store_true", help="include the ribbon data (JSON)")
    p.set_defaults(func=cmd_surface)
    p = sub.add_parser("group", parents=[coded, variant], help="group presentation")
    p.set_defaults(func=cmd_group)
    p = sub.add_parser("quandle", parents=[coded, variant], help="quandle presentation")
    p.set_defaults(func=cmd_quandle)
    p = sub.add_parser("color", parents=[coded, variant], help="count colorings")
    p.add_argument("--target", help="group:<name>, quandle:<name> or a JSON table file; "
                   f"built-ins: {', '.join(builtin_names())}")
    p.add_argument("--budget", type=int, default=50_000_000, help="search node budget")
    p.set_defaults(func=cmd_color)
    p = sub.add_parser("abelian", parents=[coded, variant], help="abelianized group")
    p.set_defaults(func=cmd_abelian)
    p = sub.add_parser("moves", parents=[coded], help="list, apply or replay moves")
    p.add_argument("--kind", choices=[k.value for k in _moves.MoveKind])
    p.add_argument("--apply", type=int, metavar="INDEX", help="apply the listed site INDEX")
    p.add_argument("--replay", metavar="TRACE", help="replay a trace JSON file")
    p.set_defaults(func=cmd_moves)

    walk = argparse.ArgumentParser(add_help=False)
    walk.add_argument("--seed", type=int, default=0)
    walk.add_argument("--steps", type=int, default=15)
    walk.add_argument("--walks", type=int, default=200)
    p = sub.add_parser("fuzz", parents=[coded, walk],
                       help="random move walks checking coloring invariance")
    p.add_argument("--targets", help=f"comma separated target names (default {','.join(FUZZ_TARGETS)})")
    p.add_argument("--balance", choices=("site", "kind", "both"), default="both")
    p.add_argument("--trace", action="store_true", help="print one walk as a replayable trace")
    p.set_defaults(func=cmd_fuzz)

    p = sub.add_parser("verify", parents=[common, walk], help="run verification suites")
    p.add_argument("--suite", action="append", choices=sorted({*SUITES, *SUITE_ALIASES}),
                   help="suite to run (repeatable; default all)")
    p.add_argument("--max-crossings", type=int, default=4)
    p.add_argument("--max-bars", type=int, default=2)
    p.add_argument("--max-components", type=int, default=2)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("catalog", parents=[common], help="list catalog entries")
    p.add_argument("--name")
    p.set_defaults(func=cmd_catalog)
    return ap


def main(argv=None) -> int:
    ap = _parser()
    args = ap.parse_args(argv)
    if args.command == "fuzz":
        mode = args.balance
        args.balance_mode = lambda: "site" if mode == "both" else mode
        args.balances = lambda: ("site", "kind") if mode == "both" else (mode,)
    try:
        return args.func(args)
    except UsageError as exc:
        ap.error(str(exc))
    except CodeValidationError as exc:
        print(f"error: invalid code: {exc}", file=sys.stderr)
        return 1
    except TwistLinkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
