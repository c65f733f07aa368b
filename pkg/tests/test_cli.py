"""
End-to-end tests for the command-line entry point.

Each test calls main() with an argv list and reads the JSON report from
stdout; input files live in pytest's tmp_path.
"""
import json

import numpy as np
import pytest

from main import build_parser, main
from src.linalg import matrix_to_json
from src.siegel.domain import SiegelBlocks


def run(capsys, argv):
    code = main(argv)
    out = capsys.readouterr().out
    return code, (json.loads(out) if out.strip().startswith("{") else None)


def write_json(tmp_path, name, data):
    path = tmp_path / name
    path.write_text(json.dumps(data))
    return str(path)


# ------------------------------------------------------------ parser

def test_parser_knows_all_commands():
    parser = build_parser()
    args = parser.parse_args(["mq", "verify-tau", "--mode", "numeric"])
    assert args.command == "mq"
    assert args.mode == "numeric"
    assert args.terms == 10


def test_no_command_exits_2(capsys):
    assert main([]) == 2


@pytest.mark.parametrize("argv", [
    ["mq", "instantons", "--degree", "0"],
    ["eisenstein", "--k", "2", "--terms", "-1"],
    ["mq", "tau1", "--terms", "0"],
    ["mq", "yukawa", "--terms", "three"],
    ["hodge", "check", "--trials", "-4"],
])
def test_out_of_range_arguments_exit_2(capsys, argv):
    assert main(argv) == 2
    assert "usage:" in capsys.readouterr().err


def test_help_exits_0(capsys):
    assert main(["eisenstein", "--help"]) == 0


# ------------------------------------------------------------ eisenstein / qm

def test_eisenstein_coefficients(capsys):
    code, report = run(capsys, ["eisenstein", "--k", "2", "--terms", "3"])
    assert code == 0
    assert report["payload"]["coefficients"] == [1, 240, 2160, 6720]
    assert report["status"] == "info"


def test_eisenstein_graded(capsys):
    code, report = run(capsys, ["eisenstein", "--k", "1", "--terms", "2", "--graded"])
    assert code == 0
    series = report["payload"]["series"]
    assert series["two_pi_i_power"] == 1
    assert series["coefficients"] == ["1/12", "-2", "-6"]


def test_qm_derive_with_check(capsys):
    code, report = run(capsys, ["qm", "derive", "--poly", "E4^3 - E6^2", "--check-terms", "10"])
    assert code == 0
    assert report["status"] == "pass"
    assert report["payload"]["weight"] == 12
    assert report["payload"]["derivative_weight"] == 14


def test_qm_derive_bad_polynomial(capsys):
    assert main(["qm", "derive", "--poly", "E8 + 1"]) == 2


@pytest.mark.parametrize("poly", ["1/0", "E4/0 + E6", "1/E2"])
def test_qm_derive_non_polynomial_exits_2(capsys, poly):
    assert main(["qm", "derive", "--poly", poly]) == 2
    assert "Error:" in capsys.readouterr().err


# ------------------------------------------------------------ group / hodge

def test_group_gamma_identity(capsys, tmp_path):
    path = write_json(tmp_path, "identity.json", [[1, 0], [0, 1]])
    code, report = run(capsys, ["group", "gamma", "--matrix", path])
    assert code == 0
    assert report["status"] == "pass"
    assert report["payload"]["frame"] == "elliptic"


def test_group_gamma_non_member(capsys, tmp_path):
    path = write_json(tmp_path, "scale.json", matrix_to_json(np.diag([2, 1])))
    code, report = run(capsys, ["group", "gamma", "--matrix", path])
    assert code == 1
    assert report["status"] == "fail"


def test_malformed_matrix_file_exits_2(capsys, tmp_path):
    path = write_json(tmp_path, "bad.json", {"rows": 2, "cols": 2, "entries": [[1, 0]]})
    assert main(["group", "gamma", "--matrix", path]) == 2
    assert "Error" in capsys.readouterr().err


def test_missing_file_exits_2(capsys, tmp_path):
    assert main(["group", "g0", "--matrix", str(tmp_path / "absent.json")]) == 2


def test_hodge_check_periods(capsys, tmp_path):
    per = np.array([[0.3 + 1.7j, -1], [1, 0]])
    path = write_json(tmp_path, "per.json", matrix_to_json(per))
    code, report = run(capsys, ["hodge", "check", "--periods", path, "--trials", "3"])
    assert code == 0
    assert report["payload"]["hodge_dimensions"] == [1, 1]


def test_hodge_check_needs_one_source(capsys):
    assert main(["hodge", "check"]) == 2


def test_hodge_connection_elliptic(capsys):
    code, report = run(capsys, ["hodge", "connection", "--path", "builtin:elliptic"])
    assert code == 0
    assert report["payload"]["path"] == "elliptic"


@pytest.mark.slow
def test_hodge_connection_perturbed_fails(capsys):
    code, report = run(capsys, ["hodge", "connection", "--path", "builtin:mq-perturbed"])
    assert code == 1
    assert report["payload"]["offending"]


# ------------------------------------------------------------ elliptic / siegel

def test_elliptic_periods(capsys):
    code, report = run(capsys, ["elliptic", "periods", "--t1", "0.1", "0.2",
                                "--t2", "3", "0.5", "--t3", "0.7", "-0.3"])
    assert code == 0
    assert report["status"] == "pass"


def test_elliptic_periods_on_discriminant(capsys):
    code, report = run(capsys, ["elliptic", "periods", "--t1", "0", "0",
                                "--t2", "3", "0", "--t3", "1", "0"])
    assert code == 1
    assert report["error"] == "DiscriminantZero"


def test_siegel_check_and_map(capsys, tmp_path):
    z = np.array([[1.0 + 2.0j, 0.3], [0.3, -0.5 + 1.5j]])
    per = SiegelBlocks.embed(z).to_period_matrix()
    path = write_json(tmp_path, "blocks.json", {"period_matrix": matrix_to_json(per)})
    code, report = run(capsys, ["siegel", "check", "--file", path])
    assert code == 0
    assert report["payload"]["genus"] == 2
    assert report["payload"]["max_relation_residual"] < 1e-10
    code, report = run(capsys, ["siegel", "map", "--file", path])
    assert code == 0
    assert report["payload"]["z"]["entries"][1] == pytest.approx([0.3, 0.0])


def test_siegel_bad_schema(capsys, tmp_path):
    path = write_json(tmp_path, "blocks.json", {"genus": 2})
    assert main(["siegel", "check", "--file", path]) == 2


# ------------------------------------------------------------ mirror quintic

def test_mq_instantons(capsys):
    code, report = run(capsys, ["mq", "instantons", "--degree", "1"])
    assert code == 0
    assert report["payload"] == {"n": ["2875"]}


def test_mq_tau1(capsys):
    code, report = run(capsys, ["mq", "tau1", "--terms", "2"])
    assert code == 0
    assert report["payload"]["polynomial"] == {"0": "-25/12", "1": "5/2", "2": "5/2"}
    assert report["payload"]["q_part"]["coefficients"][1] == "2875"


def test_mq_verify_tau_numeric(capsys):
    code, report = run(capsys, ["mq", "verify-tau", "--mode", "numeric", "--trials", "3"])
    assert code == 0
    assert report["payload"]["mode"] == "numeric"


@pytest.mark.slow
def test_selfcheck(capsys):
    code, report = run(capsys, ["selfcheck", "--trials", "3"])
    assert code == 0
    assert report["status"] == "pass"
    assert report["payload"]["instantons"][:3] == ["2875", "609250", "317206375"]
