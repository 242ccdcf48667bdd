import json

import pytest

from tycat.certificates import (
    check_certificate,
    cohomology_certificate,
    equality_certificate,
    forms_certificate,
    group_certificate,
    load_json,
    order_certificate,
    write_certificate,
)
from tycat.errors import ParseError
from tycat.presets import preset
from tycat.witt import classes_equal_mod_witt_trace, group_structure, order_details


def test_order_certificates_check():
    X = preset("a")
    res = order_details(X)
    cert = order_certificate(X, "mod_witt", res.order, res.trace, 4096)
    assert check_certificate(cert).ok
    raw = order_details(X, mod_witt=False)
    cert = order_certificate(X, "raw", raw.order, None, 64)
    assert check_certificate(cert).ok


def test_tampered_order_rejected():
    X = preset("ab")
    res = order_details(X)
    cert = order_certificate(X, "mod_witt", res.order, res.trace, 4096)
    cert["order"] = 6
    assert not check_certificate(cert).ok


def test_equality_certificate():
    X, Y = preset("ab"), preset("ba")
    tr = classes_equal_mod_witt_trace(X, preset("ab"))
    cert = equality_certificate(X, preset("ab"), "mod_witt", True, tr)
    assert check_certificate(cert).ok
    cert = equality_certificate(X, Y, "mod_witt", True, None)
    assert check_certificate(cert).ok == (classes_equal_mod_witt_trace(X, Y) is not None)


def test_group_certificate():
    gens = [preset("a"), preset("b")]
    gs = group_structure(gens, names=["a", "b"])
    cert = group_certificate(gens, ["a", "b"], gs)
    assert check_certificate(cert).ok
    cert["label"] = "A4"
    assert not check_certificate(cert).ok


def test_cohomology_and_forms_certificates():
    assert check_certificate(cohomology_certificate("Z4", "Z2+Z2:swap", 2, "Z2", "periodic")).ok
    assert not check_certificate(cohomology_certificate("Z4", "Z2+Z2:swap", 2, "Z4", "periodic")).ok
    assert check_certificate(forms_certificate("Z2", {"forms": 32, "viable": 16, "order_two": 4, "orbits": 1})).ok
    assert not check_certificate(forms_certificate("Z2", {"forms": 32, "viable": 15, "order_two": 4, "orbits": 1})).ok


def test_write_is_content_addressed(tmp_path):
    cert = cohomology_certificate("Z2", "Z2", 1, "Z2", "periodic")
    p1 = write_certificate(cert, str(tmp_path), "h1")
    p2 = write_certificate(cert, str(tmp_path), "h1")
    assert p1 == p2
    assert load_json(p1) == cert


def test_load_json_reports_position(tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"kind": "order",\n  oops}')
    with pytest.raises(ParseError) as exc:
        load_json(str(bad))
    assert "line 2" in str(exc.value)
