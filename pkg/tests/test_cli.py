import io
import json
import os
import subprocess
import sys

import pytest

from ade_jacobian.cli import run
from ade_jacobian.documents import ReportDocument


def write(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


@pytest.fixture
def docs(tmp_path):
    return {
        "a1": write(tmp_path, "a1.json", {"graph": {"kind": "A", "n": 1}, "genera": {"v0": 2, "v1": 2}, "polarisation": {"v0": 1, "v1": 2}}),
        "a1u": write(tmp_path, "a1u.json", {"graph": {"kind": "A", "n": 1}, "genera": {"v1": 1}, "polarisation": {"v0": 1, "v1": 1}}),
        "a2": write(tmp_path, "a2.json", {"graph": {"kind": "A", "n": 2}, "polarisation": {"v0": 1, "v1": 1, "v2": 1}}),
        "d4": write(tmp_path, "d4.json", {"graph": {"kind": "D", "n": 4}, "chi": 1, "polarisation": {"v0": 1, "v1": 1, "v2": 1, "v3": 1, "v4": 1}}),
        "e6": write(tmp_path, "e6.json", {"graph": {"kind": "E", "n": 6}, "chi": 1, "polarisation": {f"v{k}": 1 for k in range(7)}}),
        "marking": write(tmp_path, "m.json", {"oChi": {"v0": 1, "v1": 3}}),
        "torsion": write(tmp_path, "t.json", {"orders": {"v1": 3}}),
        "extra": write(tmp_path, "x.json", {"graph": {"kind": "A", "n": 1}, "colour": "red"}),
        "badkind": write(tmp_path, "b.json", {"graph": {"kind": "F", "n": 4}}),
        "floatdeg": write(tmp_path, "f.json", {"graph": {"kind": "A", "n": 1}, "polarisation": {"v0": 1.5, "v1": 1}}),
        "alias": write(tmp_path, "al.json", {"graph": {"kind": "A", "n": 1}, "genera": {"C0": 1}}),
        "rank": write(tmp_path, "r.json", {"graph": {"kind": "D", "n": 3}}),
    }


def call(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = run(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_validate(docs):
    code, out, err = call("validate", "--curve", docs["d4"])
    assert code == 0 and err == ""
    assert "inner" in out and "(v2)" in out and "(v0, v1, v3, v4)" in out


def test_polarisation_check_failure(docs):
    code, out, err = call("polarisation-check", "--curve", docs["a1"], "--chi", "3")
    assert code == 1 and out == ""
    assert err.startswith("AssumptionNotSatisfied:")
    assert "is 3" in err and "= 4" in err


def test_polarisation_check_success(docs):
    code, out, _ = call("--json", "polarisation-check", "--curve", docs["a1"], "--chi", "2")
    assert code == 0
    data = json.loads(out)
    assert data["results"]["admissible"] is True
    assert data["results"]["b"] == {"v0": 1, "v1": 2}


def test_enumerate_a2(docs):
    code, out, _ = call("enumerate", "--curve", docs["a2"], "--chi", "1", "--window", "2", "--json")
    assert code == 0
    data = json.loads(out)
    assert data["results"]["stable_count"] == 6 and len(data["results"]["markings"]) == 6


def test_enumerate_unguarded_shows_semistable(docs):
    code, out, _ = call("enumerate", "--curve", docs["a1u"], "--chi", "2", "--unguarded", "--json")
    assert code == 0
    statuses = {tuple(m["oChi"]): m["status"] for m in json.loads(out)["results"]["markings"]}
    assert statuses[(1, 3)] == "properly_semistable" and statuses[(2, 2)] == "stable"
    code, _, err = call("enumerate", "--curve", docs["a1u"], "--chi", "2")
    assert code == 1 and err.startswith("AssumptionNotSatisfied")


def test_stability(docs):
    code, out, _ = call("stability", "--curve", docs["a1u"], "--marking", docs["marking"], "--json")
    assert code == 0
    r = json.loads(out)["results"]
    assert r["status"] == "properly_semistable" and r["witness"] == {"v0": 1, "v1": 0}
    code, _, err = call("stability", "--curve", docs["a1u"], "--marking", docs["marking"], "--chi", "5")
    assert code == 1 and err.startswith("InvalidMarking")


def test_moduli_conjecture_lines(docs):
    code, out, _ = call("moduli", "--curve", docs["e6"])
    assert code == 0
    conjectural = [line for line in out.splitlines() if "multiplicity" in line.lower() and "is a" in line]
    assert conjectural and all("CONJECTURE" in line for line in conjectural)
    # table rows for non-reduced components carry the token too
    rows = [line for line in out.splitlines() if "SingularStratum" in line]
    assert len(rows) == 4 and all("CONJECTURE" in line for line in rows)


def test_char_cycle(docs):
    code, out, _ = call("char-cycle", "--curve", docs["a1u"], "--torsion", docs["torsion"], "--json")
    assert code == 0
    r = json.loads(out)["results"]
    assert (r["laps"], r["curve_count"]) == (3, 6)
    code, out, _ = call("char-cycle", "--curve", docs["a1u"], "--elliptic", "13,2,3,0,4", "--json")
    assert code == 0
    r = json.loads(out)["results"]
    assert r["laps"] == r["order_2s"]
    code, _, err = call("char-cycle", "--curve", docs["a1u"], "--elliptic", "13,2,3,1,1")
    assert code == 1 and err.startswith("PointNotOnCurve")
    code, _, err = call("char-cycle", "--curve", docs["a1u"])
    assert code == 1 and err.startswith("SpecMissing")
    code, _, err = call("char-cycle", "--curve", docs["a1u"], "--elliptic", "13,2")
    assert code == 2


def test_proof_scan_and_search(docs):
    code, out, _ = call("proof-scan", "--curve", docs["e6"], "--json")
    assert code == 0 and json.loads(out)["results"]["ok"] is True
    code, out, _ = call("polarisation-search", "--curve", docs["a1"], "--chi", "2", "--bound", "3", "--json")
    rows = json.loads(out)["results"]["polarisations"]
    assert {"v0": 1, "v1": 2} in rows and {"v0": 1, "v1": 1} not in rows


def test_selftest():
    code, out, _ = call("selftest")
    assert code == 0 and "classification" in out


@pytest.mark.parametrize("name,code_name", [
    ("extra", "DocumentError"),
    ("badkind", "DocumentError"),
    ("floatdeg", "DocumentError"),
    ("alias", "UnknownVertex"),
    ("rank", "InvalidRank"),
])
def test_document_errors(docs, name, code_name):
    code, out, err = call("validate", "--curve", docs[name])
    assert code == 1 and out == ""
    assert err.split(":")[0] == code_name


def test_missing_file(tmp_path):
    code, _, err = call("validate", "--curve", str(tmp_path / "nope.json"))
    assert code == 1 and err.startswith("DocumentError")


def test_usage_errors(docs):
    assert call()[0] == 2
    assert call("frobnicate")[0] == 2
    assert call("validate")[0] == 2
    assert call("enumerate", "--curve", docs["a2"], "--chi", "x")[0] == 2
    assert call("enumerate", "--curve", docs["a2"])[0] == 2  # no chi anywhere
    assert call("polarisation-search", "--curve", docs["a2"], "--chi", "1", "--bound", "0")[0] == 2
    assert call("char-cycle", "--curve", docs["a2"], "--torsion", "a", "--elliptic", "b")[0] == 2


def test_help_exits_zero():
    assert call("--help")[0] == 0


def test_bad_thread_cap(docs, monkeypatch):
    monkeypatch.setenv("ADE_JACOBIAN_THREADS", "zero")
    code, _, err = call("validate", "--curve", docs["d4"])
    assert code == 2 and "ADE_JACOBIAN_THREADS" in err


@pytest.mark.parametrize("argv", [
    ("validate", "--curve", "d4"),
    ("polarisation-check", "--curve", "d4"),
    ("enumerate", "--curve", "e6"),
    ("moduli", "--curve", "d4"),
    ("stability", "--curve", "a1u", "--marking", "marking"),
    ("char-cycle", "--curve", "a1u", "--torsion", "torsion"),
    ("proof-scan", "--curve", "d4", "--parts", "2"),
])
def test_json_reports_reparse(docs, argv):
    argv = [docs.get(a, a) for a in argv]
    code, out, _ = call(*argv, "--json")
    assert code == 0
    report = ReportDocument.model_validate_json(out)
    assert report.command == argv[0] and report.status == "ok"
    # output is canonical: re-serialising gives the same bytes
    assert json.dumps(json.loads(out), sort_keys=True, indent=2) + "\n" == out


def test_console_script_and_thread_determinism(docs):
    outputs = {}
    for threads in ("1", "8"):
        env = dict(os.environ, ADE_JACOBIAN_THREADS=threads)
        proc = subprocess.run(
            [sys.executable, "-m", "ade_jacobian.cli", "enumerate", "--curve", docs["e6"], "--json"],
            capture_output=True, env=env, check=True,
        )
        outputs[threads] = proc.stdout
    assert outputs["1"] == outputs["8"] and outputs["1"]
