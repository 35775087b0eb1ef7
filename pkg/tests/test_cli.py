"""Command-line surface: outputs, determinism, exit codes."""

import json
import subprocess
import sys


def run_cli(*args):
    proc = subprocess.run(
        [sys.executable, "-m", "aproots.cli", *args],
        capture_output=True, text=True,
    )
    return proc


def test_compat_worked_example():
    proc = run_cli("compat", "--type", "D3(2)", "--c", "1,2,3",
                   "--alpha", "2,1,0", "--beta", "0,1,0")
    assert proc.returncode == 0
    assert "degree: 1" in proc.stdout
    assert "(-1, 1)" in proc.stdout


def test_expand_command():
    proc = run_cli("expand", "--type", "A1(1)", "--c", "1,2", "--vector", "1,-1")
    assert proc.returncode == 0
    assert "1·(1,0)" in proc.stdout and "1·(0,-1)" in proc.stdout


def test_classify_json_and_fractional_vectors():
    proc = run_cli("classify", "--type", "A2(2)", "--json")
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["kind"] == "affine"
    assert payload["delta"] == [1, 2]
    proc2 = run_cli("expand", "--type", "D3(2)", "--vector", "1/2,1,1/2", "--json")
    assert proc2.returncode == 0
    terms = json.loads(proc2.stdout)
    assert {"root": [1, 1, 1], "coefficient": "1/2"} in terms


def test_domain_error_exit_code():
    proc = run_cli("classify", "--type", "Q9(9)")
    assert proc.returncode == 1
    assert "error:" in proc.stderr


def test_verification_failure_exit_code_is_distinct():
    proc = run_cli("verify", "--criteria", "nonsense")
    assert proc.returncode == 1


def test_deterministic_output():
    args = ("clusters", "--type", "D3(2)", "--depth", "2", "--json")
    first = run_cli(*args)
    second = run_cli(*args)
    assert first.returncode == 0
    assert first.stdout == second.stdout


def test_fan_svg_writes_file(tmp_path):
    out = tmp_path / "fan.svg"
    proc = run_cli("fan-svg", "--type", "D3(2)", "--depth", "3", "--out", str(out))
    assert proc.returncode == 0
    text = out.read_text()
    assert text.startswith("<svg") and "cone-neg-simples" in text


def test_oracle_command():
    proc = run_cli("oracle", "--type", "A1(1)", "--depth", "4",
                   "--check", "thm12,thm13,conj14", "--json")
    assert proc.returncode == 0
    payload = json.loads(proc.stdout)
    assert payload["thm12"]["ok"] and payload["thm13"]["ok"]
    assert payload["conj14"]["mismatches"] == []


def test_cartan_json_input(tmp_path):
    src = tmp_path / "cartan.json"
    src.write_text(json.dumps({"cartan": [[2, -2], [-2, 2]], "aff": 2}))
    proc = run_cli("roots", "--cartan-json", str(src), "--level", "0")
    assert proc.returncode == 0
    assert "1,0" in proc.stdout


def test_verify_subset():
    proc = run_cli("verify", "--criteria", "worked-example")
    assert proc.returncode == 0
    assert "PASS" in proc.stdout and "checks passed" in proc.stdout
