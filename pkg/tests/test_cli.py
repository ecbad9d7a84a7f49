import json
import subprocess
import sys

import pytest

from uqainf.action import matrix_from_text
from uqainf.cli import main, parse_basis
from uqainf.patterns import (CPattern, enumerate_basis, make_signature, pattern_to_text,
                             save_signature)

LS0 = make_signature(-1, 0, [1, 0])


@pytest.fixture
def sigfile(tmp_path):
    def write(sig=LS0, name="sig.json"):
        path = tmp_path / name
        save_signature(sig, path)
        return str(path)

    return write


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_basis_ls0(capsys, sigfile):
    path = sigfile()
    code, out, _ = run(capsys, "basis", "--signature", path, "--depth", "3")
    assert code == 0
    assert out.splitlines()[0] == f"basis sig={LS0.digest()} N=3 count=3"
    assert parse_basis(out, LS0) == enumerate_basis(LS0, 3)


def test_basis_trivial_is_one_pattern(capsys, sigfile):
    path = sigfile(make_signature(0, 0, [0]), "t.json")
    code, out, _ = run(capsys, "basis", "--signature", path, "--depth", "9")
    assert code == 0 and "count=1" in out


def test_basis_output_is_byte_identical(capsys, sigfile, tmp_path):
    path = sigfile()
    a, b = tmp_path / "a.txt", tmp_path / "b.txt"
    assert main(["basis", "--signature", path, "--depth", "4", "--out", str(a)]) == 0
    assert main(["basis", "--signature", path, "--depth", "4", "--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_missing_signature_file(capsys, tmp_path):
    code, _, err = run(capsys, "basis", "--signature", str(tmp_path / "nope.json"))
    assert code == 2 and "not found" in err


def test_malformed_signature_file(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"m": 0, "n": 0, "offsets": [0], "extra": 1}))
    code, _, _ = run(capsys, "basis", "--signature", str(bad))
    assert code == 2


def test_act_examples(capsys, sigfile):
    path = sigfile()
    code, out, _ = run(capsys, "act", "--signature", path, "f", "-1")
    assert code == 0 and out.strip() == "(1)*sqrt{1} * (1)"
    code, out, err = run(capsys, "act", "--signature", path, "e", "5")
    assert code == 0 and out == "" and "zero vector" in err
    code, out, _ = run(capsys, "act", "--signature", path, "h", "0")
    assert code == 0 and out.strip() == "(-1) * (0)"
    code, out, _ = run(capsys, "act", "--signature", path, "c")
    assert out.strip() == "(1) * (0)"


def test_act_with_pattern_file(capsys, sigfile, tmp_path):
    path = sigfile()
    pat = tmp_path / "p.txt"
    pat.write_text(pattern_to_text(CPattern(LS0, [(1,)]), path))
    code, out, _ = run(capsys, "act", "--signature", path, "--pattern", str(pat), "e", "-1")
    assert code == 0 and out.strip() == "(1)*sqrt{1} * (0)"


def test_act_rejects_invalid_pattern(capsys, sigfile, tmp_path):
    path = sigfile()
    pat = tmp_path / "p.txt"
    pat.write_text("depth 1 sig x\n2\n")
    code, _, err = run(capsys, "act", "--signature", path, "--pattern", str(pat), "e", "0")
    assert code == 2 and "invalid pattern" in err


def test_matrix_export(capsys, sigfile, tmp_path):
    path = sigfile()
    out = tmp_path / "m.txt"
    assert main(["matrix", "--signature", path, "--depth", "3", "f", "0", "--out", str(out)]) == 0
    header, entries = matrix_from_text(out.read_text())
    assert header["dim"] == len(enumerate_basis(LS0, 3))
    numeric = tmp_path / "n.txt"
    assert main(["matrix", "--signature", path, "--depth", "3", "--mode", "numeric", "f", "0",
                 "--out", str(numeric)]) == 0
    _, num = matrix_from_text(numeric.read_text(), numeric=True)
    assert set(num) == set(entries)


def test_verify_single_suite_and_json(capsys, sigfile, tmp_path):
    path = sigfile()
    out = tmp_path / "r.json"
    code = main(["verify", "hw", "--signature", path, "--depth", "3", "--format", "json", "--out", str(out)])
    assert code == 0
    data = json.loads(out.read_text())
    assert data["suite"] == "hw" and all(r["status"] == "pass" for r in data["results"])


def test_verify_literal_orientation_exits_one(capsys, sigfile):
    path = sigfile()
    code, out, _ = run(capsys, "verify", "cartan", "--signature", path, "--depth", "3",
                       "--window", "2", "--orientation", "literal")
    assert code == 1 and "witness" in out


def test_verify_usage_errors(capsys):
    assert run(capsys, "verify", "cartan", "--bogus")[0] == 2
    assert run(capsys, "verify", "nosuchsuite")[0] == 2
    assert run(capsys, "verify", "hw", "--depth", "0")[0] == 2
    assert run(capsys, "verify", "hw", "--mode", "prime")[0] == 2
    assert run(capsys, "verify", "hw", "--tolerance", "0")[0] == 2


def test_identities_small_plan(capsys):
    code, out, _ = run(capsys, "identities", "--identity", "eq31", "--trials", "10")
    assert code == 0 and json.loads(out)["status"] == "pass"


def test_identities_corrupt_exits_one(capsys):
    code, out, _ = run(capsys, "identities", "--identity", "eq33", "--trials", "3", "--corrupt")
    assert code == 1 and json.loads(out)["status"] == "fail"


def test_identities_zero_trials_exits_two(capsys):
    assert run(capsys, "identities", "--trials", "0")[0] == 2


def test_identities_output_is_deterministic(capsys):
    a = run(capsys, "identities", "--identity", "eq24", "--size", "2", "--trials", "5", "--seed", "4")[1]
    b = run(capsys, "identities", "--identity", "eq24", "--size", "2", "--trials", "5", "--seed", "4")[1]
    assert a == b


def test_series_examples(capsys, sigfile):
    code, out, _ = run(capsys, "series", "--signature", sigfile(), "-T", "6")
    assert code == 0 and out.strip().splitlines()[-1] == "verdict: stabilized value=-1"
    code, out, _ = run(capsys, "series", "--signature", sigfile(make_signature(0, 0, [0]), "t.json"))
    assert out.strip().splitlines()[-1] == "verdict: stabilized value=0"
    explicit = sigfile(make_signature(-1, 0, [1, 0], xi0=0), "x.json")
    code, out, _ = run(capsys, "series", "--signature", explicit, "-T", "6")
    assert "verdict: divergent" in out


def test_module_entry_point(sigfile):
    proc = subprocess.run([sys.executable, "-m", "uqainf", "basis", "--signature", sigfile(), "--depth", "2"],
                          capture_output=True, text=True)
    assert proc.returncode == 0 and "count=2" in proc.stdout
    proc = subprocess.run([sys.executable, "-m", "uqainf", "--nope"], capture_output=True, text=True)
    assert proc.returncode == 2
