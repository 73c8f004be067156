import json
import subprocess
import sys

import pytest

from splitalg.algebra import algebra_to_dict, builtin
from splitalg.cli import main
from splitalg.corpus import write_corpus


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_classify_cyclic6(capsys):
    code, out, _ = run(capsys, "classify", "builtin:cyclic:6")
    report = json.loads(out)
    assert code == 0
    for kind in ("right_loop", "biternary", "unital", "subtraction"):
        assert report["witnesses"][kind]["status"] == "found"
    assert all(c["pass"] for c in report["certificates"])


def test_classify_negative(capsys):
    _, out, _ = run(capsys, "classify", "builtin:pointed_set:3")
    report = json.loads(out)
    assert {w["status"] for w in report["witnesses"].values()} == {"absent"}
    assert all(v["status"] == "complete" for v in report["clones"].values())


def test_classify_file_and_proto(capsys, tmp_path):
    path = tmp_path / "z2.json"
    path.write_text(json.dumps(algebra_to_dict(builtin("cyclic_plus_only", 2))))
    code, out, _ = run(capsys, "classify", str(path), "--proto-n", "1", "2",
                       "--require-bijective")
    report = json.loads(out)
    assert code == 0
    assert report["witnesses"]["protomodular_1"]["status"] == "found"
    assert "protomodular_2" in report["witnesses"]
    assert any("s1(p(x1,...,xn,y),y)=x1" in c["name"] for c in report["certificates"])


def test_decompose(capsys):
    code, out, _ = run(capsys, "decompose", "builtin:cyclic:6", "builtin:cyclic:3")
    report = json.loads(out)
    assert code == 0 and len(report["split_epis"]) == 2
    assert all(c["pass"] for c in report["certificates"])


def test_decompose_pointed_sets(capsys):
    _, out, _ = run(capsys, "decompose", "builtin:pointed_set:3", "builtin:pointed_set:2")
    report = json.loads(out)
    card = [c for c in report["certificates"] if c["name"].endswith("|A|=|K||B|")]
    assert report["split_epis"] and card and not any(c["pass"] for c in card)


def test_decompose_identity(capsys):
    _, out, _ = run(capsys, "decompose", "builtin:cyclic:2", "builtin:cyclic:2")
    report = json.loads(out)
    ident = report["split_epis"][0]
    assert ident["alpha"] == [0, 1] and ident["kernel"] == [0]
    assert all(c["pass"] for c in report["certificates"])


def test_decompose_supplied_witness(capsys):
    _, out, _ = run(capsys, "decompose", "builtin:cyclic:6", "builtin:cyclic:3",
                    "--plus", "plus(x0,x1)", "--minus", "plus(x0,x1)")
    report = json.loads(out)
    failed = [c["name"] for c in report["certificates"] if not c["pass"]]
    assert any("psi.lands_in_K" in name for name in failed)


def test_translate(capsys, tmp_path):
    spec = {"translation": "loop_from_tilde", "algebra": "builtin:cyclic:3",
            "inputs": {"p_tilde": "plus(minus(x0,x1),x2)", "q_tilde": "plus(minus(x0,x1),x2)"}}
    path = tmp_path / "spec.json"
    path.write_text(json.dumps(spec))
    code, out, _ = run(capsys, "translate", str(path))
    report = json.loads(out)
    assert code == 0 and report["source_holds"]
    assert report["outputs"]["plus"] == "plus(minus(x0,zero),x1)"
    assert all(c["pass"] for c in report["certificates"])


def test_verify_naturality(capsys, tmp_path):
    write_corpus(tmp_path, [builtin("cyclic", n) for n in (1, 2, 4)])
    code, out, _ = run(capsys, "verify-naturality", str(tmp_path))
    report = json.loads(out)
    group = report["groups"][0]
    assert code == 0 and group["morphisms"] > 0 and group["passed"] == group["morphisms"]


def test_text_format(capsys):
    _, out, _ = run(capsys, "classify", "builtin:cyclic:3", "--format", "text")
    lines = out.splitlines()
    assert lines[0] == "algebra cyclic(3)"
    assert "witness right_loop found plus(x0,x1) ; minus(x0,x1)" in lines


@pytest.mark.parametrize("argv", [
    ["classify", "missing.json"],
    ["classify", "builtin:nope:3"],
    ["classify", "builtin:cyclic"],
    ["decompose", "builtin:cyclic:2", "builtin:pointed_set:2"],
    ["decompose", "builtin:cyclic:6", "builtin:cyclic:3", "--plus", "plus(x0", "--minus", "x0"],
])
def test_malformed_input_exit_2(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2 and out == "" and err.startswith("splitalg: error:")


def test_malformed_files_exit_2(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "classify", str(bad))[0] == 2
    doc = algebra_to_dict(builtin("cyclic", 3))
    doc["tables"]["plus"][0] = 9
    bad.write_text(json.dumps(doc))
    assert run(capsys, "classify", str(bad))[0] == 2
    spec = tmp_path / "spec.json"
    spec.write_text(json.dumps({"translation": "nope", "inputs": {}, "signature": "f/2"}))
    assert run(capsys, "translate", str(spec))[0] == 2


def test_deterministic_subprocess():
    cmd = [sys.executable, "-m", "splitalg", "classify", "builtin:cyclic:5"]
    first = subprocess.run(cmd, capture_output=True, check=True).stdout
    second = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert first == second and first


def test_builtin_command(capsys):
    code, out, _ = run(capsys, "builtin", "chain_semilattice", "2", "--pointed")
    assert code == 0 and json.loads(out)["signature"][-1]["name"] == "zero"
