import json
import subprocess
import sys


def run_cli(*args, env=None):
    return subprocess.run(
        [sys.executable, "-m", "unitcert", *args],
        capture_output=True, text=True, env=env,
    )


def test_delta_text_report():
    r = run_cli("delta", "7", "19", "3")
    assert r.returncode == 0
    assert "t = 41" in r.stdout
    assert "delta = 0" in r.stdout
    assert "mu = 1" in r.stdout


def test_delta_json():
    r = run_cli("delta", "7", "3", "59", "--json")
    assert r.returncode == 0
    doc = json.loads(r.stdout)
    assert doc["delta"] == 1
    assert doc["mu"] == "eps_pq"
    assert doc["place"]["t"] == "79"
    assert doc["theta_residue"] == "17"
    assert len(doc["fsu"]) == 7


def test_delta_hypothesis_exit_code():
    r = run_cli("delta", "5", "7", "11")
    assert r.returncode == 2
    assert "hypothesis" in r.stderr.lower()


def test_delta_search_exhausted_exit_code():
    r = run_cli("delta", "7", "19", "3", "--prime-bound", "30")
    assert r.returncode == 3


def test_delta_forced_dichotomy_failure_exit_code():
    # (7, 3, 11) is outside both Legendre branches; the forced run enables the
    # exact oracle, which detects that neither candidate is a global square
    r = run_cli("delta", "7", "3", "11", "--force")
    assert r.returncode == 4


def test_delta_places_all():
    r = run_cli("delta", "7", "19", "3", "--places", "all", "--json")
    doc = json.loads(r.stdout)
    rows = doc["all_places"]
    assert any(row["t"] == "41" and row["valid"] for row in rows)
    assert {row["delta"] for row in rows if row["valid"]} == {0}


def test_fsu_json():
    r = run_cli("fsu", "7", "19", "3", "--json")
    doc = json.loads(r.stdout)
    names = [g["name"] for g in doc["fsu"]]
    assert names == [
        "eps_2", "eps_pq", "sqrt(eps_pq*eps_ps)", "sqrt(eps_pq*eps_qs)",
        "sqrt(eps_2qs)", "sqrt(eps_pq*eps_2pq)", "xi",
    ]
    assert doc["fsu"][6]["mu"] == "1"
    assert doc["fsu"][5]["element"].startswith("21070 + 14877*r2")


def test_fsu_invalid_triple_exit_code():
    assert run_cli("fsu", "5", "7", "11").returncode == 2


def test_datum():
    r = run_cli("datum", "7", "11", "43")
    assert r.returncode == 0
    assert r.stdout.strip() == "(7, 3, 3, 1, 1, 1)"


def test_pell():
    r = run_cli("pell", "826")
    assert "222239304685 + 7732694382*sqrt(826)" in r.stdout
    r = run_cli("pell", "826", "--json")
    doc = json.loads(r.stdout)
    assert doc == {"d": "826", "x": "222239304685", "y": "7732694382", "norm": "1"}


def test_pell_invalid_d():
    assert run_cli("pell", "12").returncode == 1


def test_sqrt_biquad_and_octic():
    r = run_cli("sqrt", "biquad:2,21", "715,504,156,110")
    assert r.stdout.strip() == "14 + 9*r2 + 3*r21 + 2*r42"
    r = run_cli("sqrt", "octic:7,19,3", "--", "-1,0,0,0,0,0,0,0")
    assert r.stdout.strip() == "NOT_A_SQUARE"
    r = run_cli("sqrt", "biquad:2,21", "9/16,0,0,0", "--json")
    doc = json.loads(r.stdout)
    assert doc["is_square"] and doc["root"].startswith("3/4")


def test_separate_singleton_file(tmp_path):
    path = tmp_path / "family.json"
    path.write_text(json.dumps({
        "p": 7, "q": 19, "s": 3,
        "candidates": [["1", "0", "0", "0", "0", "0", "0", "0"]],
    }))
    r = run_cli("separate", str(path), "--json")
    doc = json.loads(r.stdout)
    assert doc["functionals"] == [] and doc["table"] == [[]]


def test_separate_pair_file(tmp_path):
    path = tmp_path / "family.json"
    path.write_text(json.dumps({
        "p": 7, "q": 19, "s": 3,
        "candidates": [
            ["1", "0", "0", "0", "0", "0", "0", "0"],
            ["2588599", "0", "224460", "0", "0", "0", "0", "0"],
        ],
    }))
    r = run_cli("separate", str(path), "--json")
    doc = json.loads(r.stdout)
    assert doc["table"] == [[0], [1]]
    assert doc["functionals"][0]["t"] == "41"


def test_verify_paper_text_and_exit():
    r = run_cli("verify-paper")
    assert r.returncode == 0
    assert "57/57 checks passed" in r.stdout


def test_verify_paper_json_deterministic():
    r1 = run_cli("verify-paper", "--json")
    r2 = run_cli("verify-paper", "--json")
    assert r1.returncode == r2.returncode == 0
    assert r1.stdout == r2.stdout
    doc = json.loads(r1.stdout)
    assert doc["ok"] and doc["failed"] == 0


def test_verify_paper_catches_nonminimal_cache_entry(tmp_path):
    # (55 + 12 sqrt21)^2 passes the norm re-verification, so only the
    # reference replay can expose it, as a diff on the printed unit
    path = tmp_path / "cache.json"
    path.write_text(json.dumps({"21": {"x": "6049", "y": "1320", "norm": "1"}}))
    r = run_cli("verify-paper", "--cache", str(path))
    assert r.returncode == 1
    assert "FAIL" in r.stdout
    assert "expected (55, 12, +1)" in r.stdout


def test_cache_env_var_roundtrip(tmp_path):
    import os

    path = tmp_path / "cache.json"
    env = dict(os.environ, UNITCERT_CACHE=str(path))
    r = run_cli("pell", "133", env=env)
    assert r.returncode == 0
    stored = json.loads(path.read_text())
    assert stored["133"]["x"] == "2588599"
    # identity-violating entries are recomputed, not trusted
    path.write_text(json.dumps({"133": {"x": "9", "y": "1", "norm": "1"}}))
    r = run_cli("pell", "133", env=env)
    assert "2588599" in r.stdout
