"""Command-line surface: exit codes, formats, determinism."""

import json
import subprocess
import sys
from pathlib import Path

from ladderdet.cli import main

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "ladderdet" / "fixtures"


def run_cli(*argv, capsys=None):
    code = main(list(argv))
    out = capsys.readouterr().out if capsys else ""
    return code, out


def test_ladder_validate_staircase10(capsys):
    code, out = run_cli("ladder", "validate", str(FIXTURES / "staircase10.json"), capsys=capsys)
    assert code == 0
    assert "u=3 v=4" in out


def test_ladder_show_and_chamfer(capsys):
    code, out = run_cli("ladder", "show", str(FIXTURES / "full3x3.json"), capsys=capsys)
    assert code == 0 and "###" in out

    code, out = run_cli("ladder", "chamfer", str(FIXTURES / "full3x3.json"),
                        "--t", "2", "--j", "1", capsys=capsys)
    assert code == 0
    obj = json.loads(out)
    assert obj["lower"] == [[2, 2]] and obj["t"] == [1]


def test_ladder_reduce_staircase10(capsys):
    code, out = run_cli("ladder", "reduce", str(FIXTURES / "staircase10.json"), capsys=capsys)
    assert code == 0 and "replay_ok=True" in out


def test_ideal_commands(capsys):
    f22 = str(FIXTURES / "full2x2.json")
    code, out = run_cli("ideal", "gb", f22, "--t", "2", capsys=capsys)
    assert code == 0 and out.strip() == "x[1,2]*x[2,1] - x[1,1]*x[2,2]"

    code, out = run_cli("ideal", "member", f22, "--t", "2",
                        "--poly", "x[1,1]*x[2,2] - x[1,2]*x[2,1]", capsys=capsys)
    assert code == 0

    code, out = run_cli("ideal", "member", f22, "--t", "2", "--poly", "x[1,1]", capsys=capsys)
    assert code == 1

    code, out = run_cli("ideal", "eq", f22, f22, "--t", "2", "--t2", "2", capsys=capsys)
    assert code == 0

    code, out = run_cli("ideal", "initial", str(FIXTURES / "full3x3.json"), "--t", "2",
                        capsys=capsys)
    assert code == 0 and "squarefree=True" in out


def test_ideal_intersect_matches_worked_identity(capsys, tmp_path):
    f23 = str(FIXTURES / "full2x3.json")
    band = tmp_path / "band.json"
    band.write_text(json.dumps({
        "shape": [2, 3],
        "gens": ["x[1,2]", "x[2,2]"],
    }))
    code, out = run_cli("ideal", "intersect", f23, str(band), "--t", "2", capsys=capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines == [
        "x[1,2]*x[2,1] - x[1,1]*x[2,2]",
        "x[1,3]*x[2,2] - x[1,2]*x[2,3]",
    ]


def test_witness_commands(capsys):
    f33 = str(FIXTURES / "full3x3.json")
    code, out = run_cli("witness", "certificate", "--ladder", f33, "--t", "2", capsys=capsys)
    assert code == 0
    cert = json.loads(out)
    assert cert["h"] == 4 and cert["counts"] == [1, 2, 1]

    code, out = run_cli("witness", "f", "--ladder", str(FIXTURES / "full2x2.json"),
                        "--t", "2", capsys=capsys)
    assert code == 0 and out.strip() == "-x[1,2]*x[2,1] + x[1,1]*x[2,2]"

    code, out = run_cli("witness", "g", "--ladder", f33, "--t", "2", capsys=capsys)
    assert code == 0 and "x[3,1]" not in out


def test_fedder_command(capsys):
    code, out = run_cli("fedder", "--ladder", str(FIXTURES / "full3x3.json"), "--t", "2",
                        "--p", "2", capsys=capsys)
    assert code == 0 and "f_pure=True" in out


def test_symbolic_commands(capsys):
    code, out = run_cli("symbolic", "degree", "--minors", "123|123 12|12", "--t", "2",
                        capsys=capsys)
    assert code == 0 and "degree=3" in out

    code, out = run_cli(
        "--field", "fp:5", "--timeout", "300", "symbolic", "compare",
        "--ladder", str(FIXTURES / "full2x3.json"), "--t", "2", "--n", "2", capsys=capsys)
    assert code == 0 and "equal=True" in out


def test_knutson_commands(capsys, tmp_path):
    out_file = tmp_path / "deriv.json"
    code, _ = run_cli("knutson", "derive", "--ladder", str(FIXTURES / "full2x3.json"),
                      "--t", "2", "--out", str(out_file), capsys=capsys)
    assert code == 0 and out_file.exists()

    code, out = run_cli("knutson", "verify", str(out_file), capsys=capsys)
    assert code == 0 and "verified=yes" in out

    code, out = run_cli("knutson", "derive", "--corner", "3,3,2,2,2", "--verify", capsys=capsys)
    assert code == 0


def test_schubert_and_poset_commands(capsys, tmp_path):
    perm = tmp_path / "w.json"
    perm.write_text(json.dumps({"shape": [3, 3], "ones": [[1, 2], [2, 1]]}))
    code, out = run_cli("schubert", "--perm", str(perm), "--gb", capsys=capsys)
    assert code == 0 and "squarefree=True" in out

    code, out = run_cli("poset", "--shape", "3,3", "--delta", "12|12", "--check", capsys=capsys)
    assert code == 0 and "formula_matches_bruteforce=True" in out


def test_accept_single_criterion(capsys):
    code, out = run_cli("accept", "run", "chamfer-descent", capsys=capsys)
    assert code == 0
    assert "[PASS] chamfer-descent" in out


def test_exit_codes_on_bad_input(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    code, _ = run_cli("ladder", "validate", str(bad), capsys=capsys)
    assert code == 2

    missing = tmp_path / "missing.json"
    code, _ = run_cli("ladder", "validate", str(missing), capsys=capsys)
    assert code == 2


def test_falsified_identity_exit_code(capsys, tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(json.dumps({"shape": [2, 2], "gens": ["x[1,1]"]}))
    b.write_text(json.dumps({"shape": [2, 2], "gens": ["x[2,2]"]}))
    code, out = run_cli("ideal", "eq", str(a), str(b), capsys=capsys)
    assert code == 1 and "equal=False" in out


def test_json_format_deterministic(capsys):
    f33 = str(FIXTURES / "full3x3.json")
    code, out1 = run_cli("--format", "json", "witness", "certificate",
                         "--ladder", f33, "--t", "2", capsys=capsys)
    code2, out2 = run_cli("--format", "json", "witness", "certificate",
                          "--ladder", f33, "--t", "2", capsys=capsys)
    assert code == code2 == 0 and out1 == out2
    payload = json.loads(out1)
    assert payload["h"] == 4


def test_console_script_entrypoint():
    proc = subprocess.run(
        [sys.executable, "-m", "ladderdet.cli", "ladder", "validate",
         str(FIXTURES / "full2x2.json")],
        capture_output=True, text=True,
    )
    assert proc.returncode == 0
    assert "u=1 v=1" in proc.stdout


def test_poset_spec_file(capsys, tmp_path):
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"cogenerators": [{"rows": [1], "cols": [1]}]}))
    code, out = run_cli("poset", "--shape", "2,2", "--spec", str(spec), capsys=capsys)
    assert code == 0
    assert out.strip() == "x[1,2]*x[2,1] - x[1,1]*x[2,2]"


def test_ideal_sum_colon_saturate(capsys, tmp_path):
    a = tmp_path / "a.json"
    b = tmp_path / "b.json"
    a.write_text(json.dumps({"shape": [2, 2], "gens": ["x[1,1]^2"]}))
    b.write_text(json.dumps({"shape": [2, 2], "gens": ["x[1,1]"]}))

    code, out = run_cli("ideal", "colon", str(a), str(b), capsys=capsys)
    assert code == 0 and out.strip() == "x[1,1]"

    code, out = run_cli("ideal", "saturate", str(a), str(b), capsys=capsys)
    assert code == 0 and "exponent=2" in out and "1" in out.splitlines()[0]

    code, out = run_cli("ideal", "sum", str(a), str(b), capsys=capsys)
    assert code == 0 and out.strip() == "x[1,1]"

    code, _ = run_cli("ideal", "colon", str(a), capsys=capsys)
    assert code == 2  # missing second ideal


def test_accept_json_format(capsys):
    code, out = run_cli("--format", "json", "accept", "run", "poset-schubert", capsys=capsys)
    assert code == 0
    payload = json.loads(out)
    assert payload[0]["key"] == "poset-schubert" and payload[0]["passed"]


def test_knutson_verify_flags_tampered_derivation(capsys, tmp_path):
    out_file = tmp_path / "deriv.json"
    code, _ = run_cli("knutson", "derive", "--ladder", str(FIXTURES / "full2x3.json"),
                      "--t", "2", "--out", str(out_file), capsys=capsys)
    assert code == 0
    obj = json.loads(out_file.read_text())
    # drop a claimed generator on the root: containment now fails
    obj["root"]["claimed"] = obj["root"]["claimed"][:1]
    tampered = tmp_path / "tampered.json"
    tampered.write_text(json.dumps(obj))
    code, out = run_cli("knutson", "verify", str(tampered), capsys=capsys)
    assert code == 1 and "FAIL" in out


def test_timeout_diagnostic(capsys):
    code, _ = run_cli("--timeout", "0.000001", "ideal", "gb",
                      str(FIXTURES / "full3x4.json"), "--t", "2", capsys=capsys)
    assert code == 1
