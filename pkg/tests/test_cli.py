import json

import numpy as np
import pytest

from toricpath.cli import main
from toricpath.networks import collinear_pair, two_cycle


@pytest.fixture
def files(tmp_path):
    G_tilde, G = collinear_pair()

    def write(name, obj):
        p = tmp_path / name
        p.write_text(json.dumps(obj))
        return str(p)

    line = {"vertices": [[1, 0], [0, 1]], "edges": [[0, 1]]}
    return {
        "G": write("g.json", G.to_dict()),
        "Gt": write("gt.json", G_tilde.to_dict()),
        "two": write("two.json", two_cycle().to_dict()),
        "line": write("line.json", line),
        "k_two": write("k_two.json", [2, 3]),
        "k_bad": write("k_bad.json", [2, "not-a-number"]),
        "x_cb": write("x_cb.json", [3, 2]),
        "x_one": write("x_one.json", [1, 1]),
        "k1": write("k1.json", [1]),
        "k2": write("k2.json", [2]),
        "kG": write("kG.json", [1.0, 2.0, 1.5, 0.5]),
        "kG2": write("kG2.json", [3.0, 0.5, 0.25, 1.0]),
        "kG_signed_bad": write("kG_sb.json", [1, -2, 1, 1]),
        "kGt": write("kGt.json", [1] * 12),
        "far": write("far.json", {"vertices": [[0, 0], [2, 0]], "edges": [[0, 1]]}),
        "near": write("near.json", {"vertices": [[0, 0], [1, 0]], "edges": [[0, 1]]}),
        "malformed": _raw(tmp_path / "bad.json", "{not json"),
        "cfg": write("cfg.json", {"tolerances": {"tol": 1e-6}, "output": "json"}),
        "dir": str(tmp_path),
    }


def _raw(path, text):
    path.write_text(text)
    return str(path)


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_check_cb(capsys, files):
    code, out, _ = run(capsys, "check-cb", files["two"], files["k_two"])
    assert code == 0 and json.loads(out)["member"] is True
    code, out, _ = run(capsys, "check-cb", files["two"], files["k_two"], "--state", files["x_cb"])
    assert code == 0
    code, out, _ = run(capsys, "check-cb", files["two"], files["k_two"], "--state", files["x_one"])
    assert code == 1 and json.loads(out)["member"] is False
    code, out, _ = run(capsys, "check-cb", files["line"], files["k1"])
    assert code == 1


def test_equiv(capsys, files):
    code, out, _ = run(capsys, "equiv", files["far"], files["k1"], files["near"], files["k2"])
    assert code == 0 and json.loads(out)["equivalent"]
    code, _, _ = run(capsys, "equiv", files["far"], files["k2"], files["near"], files["k2"])
    assert code == 1


def test_realize(capsys, files):
    # all-ones on the complete graph needs k34 = 1 - 1 - 2 < 0 on G
    code, out, _ = run(capsys, "realize", files["Gt"], files["kGt"], files["G"])
    assert code == 1 and json.loads(out)["rates"] is None
    code, out, _ = run(capsys, "realize", files["Gt"], files["kGt"], files["G"], "--signed")
    assert code == 0 and np.allclose(json.loads(out)["rates"], [6, 2, -2, 6])
    code, _, _ = run(capsys, "realize", files["G"], files["kG"], files["Gt"])
    assert code == 0


def test_flux(capsys, files):
    code, out, _ = run(capsys, "flux", files["Gt"], files["kGt"], files["Gt"])
    assert code == 0 and json.loads(out)["complex_balanced"]
    code, out, _ = run(capsys, "flux", files["two"], files["k_two"], files["two"])
    assert code == 1 and not json.loads(out)["complex_balanced"]


def test_disguised(capsys, files):
    code, out, _ = run(capsys, "disguised", files["G"], files["kG"], "--target", files["Gt"])
    assert code == 0 and json.loads(out)["member"]
    code, out, _ = run(capsys, "disguised", files["G"], files["kG_signed_bad"], "--target", files["Gt"], "--signed")
    doc = json.loads(out)
    assert code == 1 and doc["search_exhausted"]
    code, out, _ = run(capsys, "disguised", files["two"], files["k_two"])
    assert code == 0


def test_path(capsys, files):
    code, out, _ = run(capsys, "path", files["G"], files["kG"], files["kG2"], "--target", files["Gt"], "--samples", "4")
    doc = json.loads(out)
    assert code == 0 and len(doc["segments"]) == 3
    assert doc["endpoint_a"] == [1.0, 2.0, 1.5, 0.5]
    code, out, _ = run(capsys, "path", files["G"], files["kG_signed_bad"], files["kG"], "--signed",
                       "--target", files["Gt"], "--samples", "4")
    assert code == 1 and json.loads(out)["error"] == "MembershipFailure"
    code, out, _ = run(capsys, "path", files["G"], files["kG"], files["kG2"], "--target", files["Gt"],
                       "--samples", "3", "--output", "table")
    assert code == 0 and out.splitlines()[0].split() == ["segment", "kind", "length", "max_residual"]


def test_enum_wr_counts(capsys, files):
    code, out, _ = run(capsys, "enum-wr", files["two"])
    assert code == 0 and json.loads(out)["count"] == 1
    code, out, _ = run(capsys, "enum-wr", files["line"], "--complete")
    assert json.loads(out)["count"] == 1
    code, out, _ = run(capsys, "enum-wr", files["Gt"], "--max", "5")
    assert json.loads(out)["count"] == 5


def test_errors_exit_two(capsys, files):
    code, _, err = run(capsys, "check-cb", files["two"], files["malformed"])
    assert code == 2 and "JSONDecodeError" in err
    code, _, err = run(capsys, "disguised", files["G"], files["kG"], "--target", files["dir"] + "/missing.json")
    assert code == 2 and err
    code, _, err = run(capsys, "check-cb", files["two"], files["k_bad"])
    assert code == 2
    code, _, _ = run(capsys, "check-cb", files["two"], files["k1"])
    assert code == 2
    code, _, _ = run(capsys, "disguised", files["G"], files["kG"], "--target", files["G"])
    assert code == 2  # target is not weakly reversible
    code, _, _ = run(capsys, "enum-wr", files["Gt"], "--subset-cap", "3")
    assert code == 2
    code, _, _ = run(capsys, "no-such-command")
    assert code == 2


def test_config_and_flag_precedence(capsys, files):
    code, out, _ = run(capsys, "equiv", files["far"], files["k1"], files["near"], files["k2"], "--config", files["cfg"])
    assert code == 0
    code, _, _ = run(capsys, "equiv", files["far"], files["k1"], files["near"], files["k2"], "--config", files["cfg"],
                     "--tol", "-1")
    assert code == 2


def test_byte_identical_output(capsys, files):
    argv = ["path", files["G"], files["kG"], files["kG2"], "--target", files["Gt"], "--samples", "4"]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    argv = ["disguised", files["G"], files["kG"]]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
