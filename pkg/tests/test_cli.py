import json
import shutil
import subprocess

import pytest

from twistlink.abelian import abelian_invariants
from twistlink.catalog import catalog_load
from twistlink.cli import main
from twistlink.cover import double_cover
from twistlink.gauss import parse_code, stats
from twistlink.moves import enumerate_moves
from twistlink.presentation import twisted_group, twisted_quandle
from twistlink.ribbon import abstract_diagram, surface_invariants

from conftest import TREFOIL


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, *argv, "--json")
    assert code == 0
    return json.loads(out)


def test_color_example(capsys):
    code, out, _ = run(capsys, "color", TREFOIL, "--variant", "upper", "--target", "quandle:R3")
    assert (code, out.strip()) == (0, "9")


def test_cover_example(capsys):
    assert run(capsys, "cover", "(*)")[:2] == (0, "()\n")


def test_json_equals_library_output(capsys):
    code = parse_code("(O1+ * U2- U1+ O2-)")
    text = "(O1+ * U2- U1+ O2-)"
    assert run_json(capsys, "cover", text) == json.loads(json.dumps(double_cover(code).to_json()))
    assert run_json(capsys, "stats", text) == json.loads(json.dumps(stats(code)._asdict()))
    assert run_json(capsys, "group", text) == twisted_group(code).to_json()
    assert run_json(capsys, "surface", text) == \
        json.loads(json.dumps(surface_invariants(abstract_diagram(code)).to_json()))
    assert run_json(capsys, "moves", text) == \
        json.loads(json.dumps([s.to_json() for s in enumerate_moves(code)]))
    inv = abelian_invariants(twisted_group(code))
    assert run_json(capsys, "abelian", text) == {"free_rank": inv.free_rank,
                                                 "torsion": list(inv.torsion)}


def test_json_is_byte_stable(capsys):
    _, out, _ = run(capsys, "cover", TREFOIL, "--json")
    assert out.strip() == json.dumps(double_cover(parse_code(TREFOIL)).to_json(), sort_keys=True)


def test_catalog_name_option(capsys):
    data = run_json(capsys, "color", "--name", "trefoil", "--variant", "upper",
                    "--target", "quandle:R3")
    assert data["count"] == 9
    entries = run_json(capsys, "catalog")
    assert [e["name"] for e in entries] == [e.name for e in catalog_load()]
    assert run_json(capsys, "quandle", "--name", "unknot-bar") == \
        twisted_quandle(parse_code("(*)")).to_json()


def test_validate_reports_violations(capsys):
    code, out, _ = run(capsys, "validate", "(O1+ O1+)")
    assert code == 1 and "two Over" in out
    assert run(capsys, "validate", "(O1+ U1+)")[:2] == (0, "valid\n")


def test_domain_errors_exit_1(capsys):
    code, _, err = run(capsys, "stats", "(O1+ U1+")
    assert code == 1 and "error" in err
    assert run(capsys, "group", "(*)", "--variant", "upper")[0] == 1
    assert run(capsys, "color", TREFOIL, "--target", "group:S3", "--budget", "1",
               "--variant", "twisted")[0] == 1
    assert run(capsys, "stats", "--name", "no-such-entry")[0] == 1
    assert run(capsys, "moves", TREFOIL, "--apply", "999")[0] == 1


@pytest.mark.parametrize("argv", [
    ["frobnicate"],
    ["stats", TREFOIL, "--bogus"],
    ["color", TREFOIL],
    ["color", TREFOIL, "--target", "nonsense"],
    ["stats"],
    ["stats", TREFOIL, "--name", "trefoil"],
    ["verify", "--suite", "nope"],
])
def test_usage_errors_exit_2(capsys, argv):
    with pytest.raises(SystemExit) as exc:
        main(argv)
    assert exc.value.code == 2


def test_moves_apply_and_replay(capsys, tmp_path):
    code, out, _ = run(capsys, "moves", "(O1+ U1+)", "--kind", "R1_delete", "--apply", "0")
    assert (code, out.strip()) == (0, "()")
    trace = run_json(capsys, "fuzz", TREFOIL, "--trace", "--steps", "6", "--seed", "4")
    path = tmp_path / "trace.json"
    path.write_text(json.dumps(trace))
    data = run_json(capsys, "moves", "--replay", str(path))
    assert data["matches"] is True
    trace["final"] = "(O1+ U1+)"
    path.write_text(json.dumps(trace))
    assert run(capsys, "moves", "--replay", str(path))[0] == 1
    path.write_text(json.dumps({"initial": 3}))
    code, _, err = run(capsys, "moves", "--replay", str(path))
    assert code == 1 and "malformed" in err


def test_fuzz_small_run(capsys):
    results = run_json(capsys, "fuzz", "--name", "kink-bar", "--walks", "3", "--steps", "5",
                       "--targets", "S3,R3")
    assert len(results) == 1 and results[0]["passed"] and results[0]["checked"] > 0
    results = run_json(capsys, "fuzz", "--walks", "1", "--steps", "2", "--balance", "site")
    names = [r["subject"] for r in results]
    assert names == sorted(names) and len(names) == len(catalog_load())


def test_verify_suites_and_alias(capsys):
    code, out, _ = run(capsys, "verify", "--suite", "known", "--suite", "structural")
    assert code == 0
    lines = out.splitlines()
    assert lines == sorted(lines) and all(l.startswith("PASS") for l in lines)
    code, out, _ = run(capsys, "verify", "--suite", "theorem61", "--max-crossings", "1",
                       "--max-bars", "1")
    assert code == 0 and out.startswith("PASS cover-group")


def test_verify_is_deterministic(capsys):
    argv = ["verify", "--suite", "structural", "--seed", "3", "--json"]
    first = [dict(r, seconds=0) for r in json.loads(run(capsys, *argv)[1])]
    second = [dict(r, seconds=0) for r in json.loads(run(capsys, *argv)[1])]
    assert first == second


@pytest.mark.skipif(shutil.which("tlk") is None, reason="console script not installed")
def test_console_script():
    out = subprocess.run(["tlk", "stats", TREFOIL], capture_output=True, text=True)
    assert out.returncode == 0 and "writhe 3" in out.stdout
    bad = subprocess.run(["tlk", "nope"], capture_output=True, text=True)
    assert bad.returncode == 2
