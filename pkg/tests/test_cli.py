import json
import subprocess
import sys

import pytest

from tycat.cli import main, parse_degrees
from tycat.errors import ParseError


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_parse_degrees():
    assert parse_degrees("0..3") == [0, 1, 2, 3]
    assert parse_degrees("5,6") == [5, 6]
    with pytest.raises(ParseError):
        parse_degrees("x")


def test_witt_order_json(capsys, tmp_path):
    code, out, _ = run(capsys, "witt", "order", "--preset", "a", "--json", "--cert-dir", str(tmp_path))
    assert code == 0
    data = json.loads(out)
    res = data["results"][0]
    assert res["mod_witt"]["order"] == 4
    assert res["raw"]["order"] == 8
    certs = sorted(p.name for p in tmp_path.iterdir())
    assert len(certs) == 2
    code, out, _ = run(capsys, "check-cert", *[str(tmp_path / c) for c in certs])
    assert code == 0
    assert "OK" in out


def test_verify_mismatch_exit_code(capsys):
    code, _, _ = run(capsys, "witt", "order", "--preset", "a", "--mode", "raw", "--verify", "--cert-dir", "")
    assert code == 2
    code, _, _ = run(capsys, "witt", "order", "--preset", "ab", "--mode", "mod-witt", "--verify", "--cert-dir", "")
    assert code == 0


def test_parse_error_exit_code(capsys):
    code, _, err = run(capsys, "cohomology", "--group", "Q8", "--module", "torus", "--cert-dir", "")
    assert code == 4
    assert "ParseError" in err


def test_cap_exit_code(capsys):
    code, _, err = run(capsys, "witt", "order", "--preset", "a2b", "--cap-subgroups", "4", "--cert-dir", "")
    assert code == 3
    assert "cap exceeded" in err


def test_cohomology_both_methods(capsys):
    code, out, _ = run(
        capsys, "cohomology", "--group", "Z4", "--module", "Z2+Z2:swap", "--degrees", "0..3",
        "--method", "both", "--json", "--cert-dir", "", "--verify",
    )
    assert code == 0
    data = json.loads(out)
    assert all(d["agree"] for d in data["degrees"])
    assert [d["value"] for d in data["degrees"]] == ["Z2", "Z2", "Z2", "Z2"]


def test_ty_forms_and_classify(capsys):
    code, out, _ = run(capsys, "ty", "forms", "--A", "Z3", "--json", "--cert-dir", "")
    assert code == 0
    data = json.loads(out)
    assert data["viable"] == 18
    assert data["orbit_sizes"] == [3, 3]
    code, out, _ = run(capsys, "ty-classify", "--A", "Z2", "--G", "Z2", "--witt-orders", "1,2", "--json", "--cert-dir", "")
    assert code == 0
    assert len(json.loads(out)["labels"]) == 16
    code, _, err = run(capsys, "ty", "classify", "--A", "Z4", "--G", "Z4", "--action", "swap", "--cert-dir", "")
    assert code != 0
    assert "NotSymplectic" in err


def test_fusion_table(capsys):
    code, out, _ = run(capsys, "fusion-table", "--A", "Z2", "--phi", "q:1/4")
    assert code == 0
    assert "D2" in out


def test_output_is_deterministic(capsys):
    argv = ["witt", "group", "--preset", "ab-generators", "--json", "--cert-dir", ""]
    _, first, _ = run(capsys, *argv)
    _, second, _ = run(capsys, *argv)
    assert first == second
    assert json.loads(first)["label"] == "S4"


def test_config_file(capsys, tmp_path):
    cfg = tmp_path / "tycat.toml"
    cfg.write_text("json = true\ncert_dir = ''\n")
    code, out, _ = run(capsys, "fusion-table", "--A", "Z2", "--config", str(cfg))
    assert code == 0
    json.loads(out)
    cfg.write_text("nonsense = 1\n")
    code, _, _ = run(capsys, "fusion-table", "--A", "Z2", "--config", str(cfg))
    assert code == 4


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "tycat", "--version"], capture_output=True, text=True)
    assert proc.returncode == 0
    assert "tycat" in proc.stdout
