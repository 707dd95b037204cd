"""Command-line interface: commands, formats, determinism, exit codes."""

import json

import pytest

from hhbv.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out


def test_present_char2(capsys):
    code, out = run(capsys, "present", "-g", "Z/6", "-r", "F_2", "-d", "4")
    assert code == 0
    assert "y^2 - x^4*z" in out


def test_present_rejects_composite_field(capsys):
    code = main(["present", "-g", "Z/6", "-r", "Z/4"])
    assert code == 2
    err = capsys.readouterr().err
    assert "composite" in err


def test_delta_tensor_generator(capsys):
    code, out = run(capsys, "delta", "-g", "Z/4 x Z/2", "-r", "Z", "-m", "c")
    assert code == 0
    assert "delta: x^3*b" in out        # -x^3 b with the order-2 coefficient
    assert "agreement: True" in out


def test_delta_cyclic_json(capsys):
    code, out = run(capsys, "delta", "-g", "Z/6", "-r", "F_2", "-m", "x^2*y",
                    "--format", "json")
    assert code == 0
    doc = json.loads(out)
    assert doc["schema"] == "hhbv/1"
    assert doc["agreement"] is True
    assert doc["delta"] == "x"


def test_bracket_routes(capsys):
    code, out = run(capsys, "bracket", "-g", "Z/3", "-r", "F_3",
                    "-m", "z*x", "-m", "z*y*x")
    assert code == 0
    assert "agreement: True" in out


def test_homology_cyclic(capsys):
    code, out = run(capsys, "homology", "-g", "Z/3", "-r", "Z", "-d", "4")
    assert code == 0
    assert "degree 0: Z^3" in out
    assert "degree 1: 0" in out
    assert "degree 2: Z/3 + Z/3 + Z/3" in out


def test_compare_matrix(capsys):
    code, out = run(capsys, "compare", "-g", "Z/4", "-r", "F_2", "-m", "y")
    assert code == 0
    assert "agree: True" in out
    assert "circle vs delta-route vs closed-form" in out


def test_verify_suite(capsys):
    code, out = run(capsys, "verify", "--suite", "bvkz")
    assert code == 0
    assert "status: pass" in out


def test_verify_unknown_suite(capsys):
    with pytest.raises(SystemExit):
        main(["verify", "--suite", "bogus"])


def test_deterministic_output(capsys):
    args = ["present", "-g", "Z/4", "-r", "F_2", "--format", "json"]
    main(args)
    first = capsys.readouterr().out
    main(args)
    second = capsys.readouterr().out
    assert first == second


def test_degree_bound_validated():
    with pytest.raises(SystemExit):
        main(["present", "-g", "Z/4", "-r", "Z", "-d", "9"])


def test_degree_cap_env(capsys, monkeypatch):
    monkeypatch.setenv("HHBV_DEGREE_CAP", "2")
    code, out = run(capsys, "homology", "-g", "Z/2", "-r", "Z")
    assert code == 0
    assert "degree 2" in out and "degree 3" not in out


def test_monomial_parse_error(capsys):
    code = main(["delta", "-g", "Z/6", "-r", "F_2", "-m", "q^2"])
    assert code == 2
    assert "position" in capsys.readouterr().err
