import json
from fractions import Fraction

import pytest

from aiida_susyqm.cli import RunConfig, build_parser, main, parse_superpotential, run
from aiida_susyqm.cli.main import config_from_args, emit
from aiida_susyqm.exceptions import GrammarError, NonMonomial
from aiida_susyqm.ring import QuasiPoly
from aiida_susyqm.superconformal import expected_energies


@pytest.mark.parametrize(
    "src,coefficient,power",
    [
        ("2.5*x^-1", Fraction(5, 2), -1),
        ("1/x", 1, -1),
        ("x", 1, 1),
        ("0.7 x^2", Fraction(7, 10), 2),
        ("3/2*x^(1/2)", Fraction(3, 2), Fraction(1, 2)),
        ("4", 4, 0),
    ],
)
def test_superpotential_grammar(src, coefficient, power):
    expr = parse_superpotential(src)
    assert expr.coefficient == coefficient
    assert expr.power == power


def test_grammar_builds_ring_monomial():
    assert parse_superpotential("2.5*x^-1").to_quasipoly() == QuasiPoly.monomial(2.5, s=-1)
    assert parse_superpotential("2.5*x^-1").format() == "2.5*x^-1"


def test_sums_are_rejected_at_the_operator():
    with pytest.raises(NonMonomial) as info:
        parse_superpotential("x + x^2")
    assert info.value.column == 3
    assert info.value.diagnostic().splitlines()[-1] == "    ^"


def test_garbage_is_a_grammar_error():
    with pytest.raises(GrammarError):
        parse_superpotential("x^^2")


@pytest.mark.parametrize(
    "overrides",
    [
        {"command": "verify everything"},
        {"command": "spectrum", "format": "pdf"},
        {"command": "spectrum", "system": "custom"},
        {"command": "spectrum", "system": "custom", "c": 1.0},
        {"command": "spectrum", "system": "example2", "w": "x"},
        {"command": "verify closure"},
        {"command": "spectrum", "levels": 0},
        {"command": "spectrum", "grid_n": 8},
    ],
)
def test_config_validation(overrides):
    with pytest.raises(ValueError):
        RunConfig(**overrides)


def test_config_rejects_unknown_keys():
    with pytest.raises(ValueError, match="unknown configuration keys"):
        RunConfig.from_dict({"command": "spectrum", "colour": "red"})


def test_config_file_with_flag_override(tmp_path):
    path = tmp_path / "run.json"
    path.write_text(json.dumps({"system": "example1", "k": 2.0, "format": "json"}))
    args = build_parser().parse_args(["zero-modes", "--config", str(path), "--k", "3"])
    cfg = config_from_args(args)
    assert cfg.command == "zero-modes"
    assert cfg.system == "example1"
    assert cfg.k == 3.0
    saved = tmp_path / "saved.json"
    saved.write_text(json.dumps(cfg.to_json()))
    assert RunConfig.from_json(saved) == cfg


def test_verify_clifford_passes(capsys):
    assert main(["verify", "clifford", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert payload["pass"] is True
    assert payload["command"] == "verify clifford"
    assert all(check["residual"] == 0.0 for check in payload["checks"])


def test_zero_modes_inverse_square(capsys):
    assert main(["zero-modes", "--system", "example1", "--format", "json"]) == 0
    result = json.loads(capsys.readouterr().out)["result"]
    assert len(result["modes"]) == 4
    assert result["normalizable"] == []
    assert result["verdict"] == "SUSY broken"


def test_custom_ss4_run():
    cfg = RunConfig(command="verify ss4", system="custom", w="2*x^2", k1=0.6, k3=0.8)
    status, payload, _ = run(cfg)
    assert status == 0
    names = [check["name"] for check in payload["checks"]]
    assert "B.consistency" in names
    assert not any(name.startswith("intertwining") for name in names)


def test_closure_for_wrong_system_fails_cleanly():
    status, payload, _ = run(RunConfig(command="verify closure", system="example2", algebra="sc4-1"))
    assert status == 1
    assert payload["pass"] is False
    assert "example1" in payload["checks"][0]["error"]


def test_bad_superpotential_reports_caret():
    status, payload, _ = run(RunConfig(command="zero-modes", system="custom", w="x + x^2"))
    assert status == 1
    assert payload["checks"][0]["error"].endswith("^")


def test_invalid_flags_exit_with_config_error(capsys):
    assert main(["spectrum", "--system", "custom", "--format", "json"]) == 2
    payload = json.loads(capsys.readouterr().out)
    assert payload["checks"][0]["name"] == "config"


def test_config_error_in_text_format(capsys):
    assert main(["spectrum", "--system", "custom"]) == 2
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == "susyqm spectrum"
    assert lines[1].startswith("  FAIL  config: ")
    assert lines[-1] == "result: FAIL"


def test_config_error_in_csv_format(capsys):
    assert main(["spectrum", "--system", "custom", "--format", "csv"]) == 2
    rows = capsys.readouterr().out.splitlines()
    assert rows[0] == "name,residual,threshold,pass,error"
    assert rows[1].startswith("config,,,False,")


def test_spectrum_csv():
    cfg = RunConfig(command="spectrum", format="csv", grid_n=2000)
    status, payload, outcome = run(cfg)
    assert status == 0
    rows = emit(cfg, payload, outcome).splitlines()
    assert rows[0] == "sector,level_index,E_numeric,E_closed_form,abs_error"
    closed = [float(row.split(",")[3]) for row in rows[1:7]]
    assert closed == [0.0, 2.0, 2.0, 2.0, 2.0, 4.0]
    degeneracy = next(check for check in payload["checks"] if check["name"] == "spectrum.degeneracy")
    assert degeneracy["pattern"] == [1, 4, 4, 4, 3]


def test_inverse_square_has_no_discrete_spectrum():
    status, payload, _ = run(RunConfig(command="spectrum", system="example1"))
    assert status == 1
    assert "continuous" in payload["checks"][0]["error"]


def test_figures_written_as_svg(tmp_path):
    out = tmp_path / "levels.svg"
    assert main(["report", "figures", "--levels", "2", "--format", "svg", "--out", str(out)]) == 0
    assert out.read_text().lstrip().startswith("<?xml")


def test_coupled_custom_spectrum_is_solved_in_rotated_basis():
    cfg = RunConfig(command="spectrum", system="custom", w="x", k1=0.6, k3=0.8, levels=2, grid_n=2000)
    status, payload, _ = run(cfg)
    assert status == 0
    assert payload["result"]["rotation"]["coupling_norm"] == pytest.approx(1.0)
    levels = payload["result"]["fd"]["levels"]
    for sector in (1, 2, 3, 4):
        assert levels[str(sector)] == pytest.approx(expected_energies(1, 1.0, sector), abs=1e-2)
