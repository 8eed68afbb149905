import json
import subprocess
import sys

import pytest

from spancalc import serialize
from spancalc.cli import main
from spancalc.corpus import group, rep_system, standard_rep
from spancalc.groupoid import delooping, terminal_map
from spancalc.local_systems import LocalSystem
from spancalc.matrix import RatMatrix
from spancalc.span import Span, identity_span

BZ2 = delooping([[0, 1], [1, 0]], label="BZ2")
BS3 = delooping(group("S3").table, label="BS3")


def write(path, value):
    path.write_text(serialize.dumps(serialize.dump(value) if not isinstance(value, dict) else value))
    return str(path)


@pytest.fixture
def files(tmp_path):
    sign = LocalSystem(BZ2, [1], [RatMatrix.identity(1), RatMatrix.scalar(-1)])
    q = terminal_map(BZ2)
    return {
        "bz2": write(tmp_path / "bz2.json", BZ2),
        "sign": write(tmp_path / "sign.json", sign),
        "std": write(tmp_path / "std.json", rep_system(BS3, standard_rep(group("S3")))),
        "id": write(tmp_path / "id.json", identity_span(BZ2)),
        "down": write(tmp_path / "down.json", Span(BZ2, q, q)),
        "broken": write(tmp_path / "broken.json", {"kind": "groupoid", "objects": 1, "morphisms": [[0, 0]],
                                                   "identity": [0], "inverse": [0], "compose": []}),
    }


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr().out
    return code, (json.loads(out) if out else None)


def test_cardinality(capsys, files):
    code, report = run(capsys, "--command", "cardinality", "--input", files["bz2"])
    assert code == 0 and report["result"] == "1/2" and report["status"] == "ok"
    assert len(report["inputs"][0]["sha256"]) == 64
    assert "timing" not in report


def test_timing_on_request(capsys, files):
    _, report = run(capsys, "--command", "cardinality", "--input", files["bz2"], "--timing")
    assert report["timing"]["seconds"] >= 0


def test_norm_check(capsys, files):
    code, report = run(capsys, "--command", "norm-check", "--input", files["sign"])
    assert code == 0
    assert (report["colim_dim"], report["lim_dim"], report["is_iso"]) == (0, 0, True)


def test_quantize(capsys, files):
    assert run(capsys, "--command", "quantize-circle", "--input", files["std"])[1]["result"] == "0"
    assert run(capsys, "--command", "quantize-point", "--input", files["std"])[1]["result"] == 0


def test_span_commands(capsys, files):
    code, report = run(capsys, "--command", "linearize", "--input", files["down"])
    assert code == 0 and report["result"] == [["1/2"]]
    code, report = run(capsys, "--command", "linearize", "--input", files["down"], "--input", files["down"])
    assert report["result"] == [["1/4"]]
    code, report = run(capsys, "--command", "compose", "--input", files["down"], "--input", files["down"])
    assert code == 0 and report["result"]["kind"] == "span"
    code, report = run(capsys, "--command", "compose", "--input", files["id"], "--input", files["down"])
    assert code == 1 and report["status"] == "error"
    code, report = run(capsys, "--command", "equiv", "--input", files["id"], "--input", files["id"])
    assert code == 0 and report["equivalent"] is True
    code, report = run(capsys, "--command", "tensor", "--input", files["id"], "--input", files["down"])
    assert code == 0


def test_groupoid_commands(capsys, files):
    code, report = run(capsys, "--command", "skeleton", "--input", files["bz2"])
    assert code == 0 and report["components"][0]["order"] == 2
    assert run(capsys, "--command", "trace-form", "--input", files["bz2"])[1]["result"] == [["1/2"]]
    assert run(capsys, "--command", "validate", "--input", files["bz2"], "--input", files["sign"])[1]["kinds"] == [
        "groupoid", "local_system"]


def test_domain_error_exit_1(capsys, files):
    code, report = run(capsys, "--command", "validate", "--input", files["broken"])
    assert code == 1 and report["status"] == "error"
    assert report["error"]["axiom"] in ("totality", "unit", "typing")


def test_usage_errors_exit_2(capsys, files, tmp_path):
    assert run(capsys, "--command", "cardinality", "--input", files["sign"])[0] == 2
    assert run(capsys, "--command", "cardinality")[0] == 2
    assert run(capsys, "--command", "cardinality", "--input", str(tmp_path / "missing.json"))[0] == 2
    assert main(["--command", "nonsense"]) == 2
    assert main(["--command", "equiv", "--budget", "-1"]) == 2
    capsys.readouterr()


def test_out_file(capsys, files, tmp_path):
    target = tmp_path / "report.json"
    assert main(["--command", "cardinality", "--input", files["bz2"], "--out", str(target)]) == 0
    assert json.loads(target.read_text())["result"] == "1/2"
    assert capsys.readouterr().out == ""


def test_module_entry_point_is_deterministic(files):
    cmd = [sys.executable, "-m", "spancalc", "--command", "quantize-circle", "--input", files["std"]]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["result"] == "0"
