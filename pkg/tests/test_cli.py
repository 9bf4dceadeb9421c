"""Command-line behaviour: config parsing, exit codes, report and CSV
emission, and determinism of the serialized output."""
import json
from fractions import Fraction

import pytest

from kk6.cli import CliError, main, parse_config

GEO_HEADER = "tau," + ",".join(f"re_x{a},im_x{a}" for a in range(6))


def run(argv, capsys):
    code = main(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


# ---------------------------------------------------------------------------
# configuration parsing

def test_minimal_config_defaults():
    cfg = parse_config("command=verify\n")
    assert cfg.command == "verify"
    assert cfg.seed == 0 and cfg.tol == 1e-9 and cfg.format == "json"
    assert cfg.claims is None and cfg.params == {}
    assert cfg.echo["seed"] == 0 and cfg.echo["tol"] == 1e-9


def test_comments_blank_lines_and_whitespace_tolerated():
    cfg = parse_config(
        "# run setup\n"
        "command = curvature   # inline comment\n"
        "\n"
        "  ansatz = photon\n"
        "omega = 3/4\n")
    assert cfg.command == "curvature" and cfg.ansatz == "photon"
    assert cfg.params["omega"] == Fraction(3, 4)


def test_error_positions_are_line_and_column_exact():
    with pytest.raises(CliError) as ei:
        parse_config("command=verify\nseed=abc\n")
    assert ei.value.code == "config" and ei.value.exit_code == 2
    assert "line 2, column 6" in str(ei.value)
    assert "seed expects an integer" in str(ei.value)

    with pytest.raises(CliError) as ei:
        parse_config("command=verify\n   notakey\n")
    assert "line 2, column 4: expected key=value" in str(ei.value)

    with pytest.raises(CliError) as ei:
        parse_config("command=verify\nseed=\n")
    assert "empty value for 'seed'" in str(ei.value)


@pytest.mark.parametrize("text,needle", [
    ("command=orbit\n", "unknown command 'orbit'"),
    ("command=verify\nwibble=1\n", "unknown key 'wibble'"),
    ("command=verify\nclaims=kg.reduction,nope\n", "unknown claim id 'nope'"),
    ("command=curvature\nansatz=torus\n", "unknown ansatz 'torus'"),
    ("command=verify\ntol=2\n", "tol must lie in (0, 1)"),
    ("command=verify\nseed=-1\n", "64 unsigned bits"),
])
def test_rejected_configurations(text, needle):
    with pytest.raises(CliError) as ei:
        parse_config(text)
    assert needle in str(ei.value)


def test_first_error_wins_over_later_ones():
    # line 2 is malformed before line 3's unknown key can be seen
    with pytest.raises(CliError) as ei:
        parse_config("command=verify\nseed=zz\nwibble=1\n")
    assert "line 2" in str(ei.value)


def test_symbolic_binding_is_dropped_from_params():
    cfg = parse_config("command=curvature\nansatz=scalar\n"
                       "p1=symbolic\np2=1/3\n")
    assert "p1" not in cfg.params
    assert cfg.params["p2"] == Fraction(1, 3)
    assert cfg.echo["p1"] == "symbolic"   # still echoed for provenance


def test_cross_field_validation():
    with pytest.raises(CliError, match="not accepted by any selected claim"):
        parse_config("command=verify\nclaims=fsq.null\nm0=1\n")
    with pytest.raises(CliError, match="not declared by ansatz"):
        parse_config("command=curvature\nansatz=photon\nkappa=1\n")
    with pytest.raises(CliError, match="scalar ansatz only"):
        parse_config("command=geodesic\nansatz=photon\n")
    with pytest.raises(CliError, match="requires numeric"):
        parse_config("command=geodesic\nm0=symbolic\n")
    with pytest.raises(CliError, match="csv output applies"):
        parse_config("command=verify\nformat=csv\n")


# ---------------------------------------------------------------------------
# exit codes

def test_exit_0_and_json_shape_on_stdout(capsys):
    code, out, err = run(["verify", "--claim", "fsq.null", "omega=2"],
                         capsys)
    assert code == 0 and err == ""
    rep = json.loads(out)
    assert rep["command"] == "verify"
    assert [r["id"] for r in rep["records"]] == ["fsq.null"]
    assert rep["records"][0]["verdict"] == "Confirmed"
    assert rep["config"]["omega"] == "2"
    assert "out" not in rep["config"]


def test_exit_0_on_empty_claim_selection(capsys):
    code, out, _ = run(["verify", "--claim", ""], capsys)
    assert code == 0
    assert json.loads(out)["records"] == []


def test_exit_1_when_a_must_pass_claim_is_refuted(capsys):
    code, out, _ = run(["verify", "--claim", "maxwell.reduction",
                        "potential=massive", "k3=1/2", "m0=1"], capsys)
    assert code == 1
    rec = json.loads(out)["records"][0]
    assert rec["verdict"] == "Refuted" and rec["witness"]


def test_exit_2_on_ansatz_domain_error(capsys):
    code, out, err = run(["curvature", "ansatz=dirac1", "p3=0"], capsys)
    assert code == 2 and out == ""
    assert err.startswith("error[ansatz]: ")
    assert "normalization C is undefined at p3 = 0" in err
    assert err.count("\n") == 1       # single line


def test_exit_2_on_usage_errors(capsys):
    code, _, err = run([], capsys)
    assert code == 2 and err.startswith("error[usage]: ")
    code, _, err = run(["verify", "stray"], capsys)
    assert code == 2 and "expected key=value" in err


def test_exit_3_on_unwritable_output(capsys):
    code, _, err = run(["fringes", "points=2", "--out", "/dev/null/x"],
                       capsys)
    assert code == 3 and err.startswith("error[io]: ")


def test_exit_3_on_runtime_failure(capsys):
    code, _, err = run(["geodesic", "steps=2", "tau_end=1e300"], capsys)
    assert code == 3 and err.startswith("error[runtime]: ")


# ---------------------------------------------------------------------------
# flags, config files, and precedence

def test_config_file_supplies_command_and_flags_override(tmp_path, capsys):
    cfgfile = tmp_path / "run.cfg"
    cfgfile.write_text("command=verify\nclaims=fsq.null\nseed=1\n")
    code, out, _ = run(["--config", str(cfgfile), "--seed", "9"], capsys)
    assert code == 0
    assert json.loads(out)["seed"] == 9


def test_bindings_may_follow_flags(capsys):
    code, out, _ = run(["verify", "--seed", "3", "--claim", "fsq.null",
                        "omega=5"], capsys)
    assert code == 0
    assert json.loads(out)["config"]["omega"] == "5"


def test_unknown_flag_is_a_usage_error(capsys):
    code, _, err = run(["verify", "--frobnicate"], capsys)
    assert code == 2 and err.startswith("error[usage]: ")


# ---------------------------------------------------------------------------
# curvature output

def test_curvature_report_carries_tensor_data(capsys):
    code, out, _ = run(["curvature", "ansatz=photon", "omega=1"], capsys)
    assert code == 0
    data = json.loads(out)["data"]
    assert data["ansatz"] == "photon"
    assert data["ricci_scalar"] == "0"
    assert data["claimed_inverse"]["exact"] is True
    assert data["claimed_inverse"]["structural_zero_entries"] == 36


def test_curvature_scalar_defaults_to_symbolic_momenta(capsys):
    code, out, _ = run(["curvature"], capsys)
    assert code == 0
    data = json.loads(out)["data"]
    assert data["ansatz"] == "scalar"
    assert any("p1" in v for v in data["einstein"].values())


# ---------------------------------------------------------------------------
# geodesic and fringe CSV tables

def test_geodesic_csv_layout(tmp_path, capsys):
    out = tmp_path / "geo"
    code, _, _ = run(["geodesic", "steps=4", "--format", "csv",
                      "--out", str(out)], capsys)
    assert code == 0
    lines = (out / "path.csv").read_text().splitlines()
    assert lines[0] == GEO_HEADER
    assert len(lines) == 1 + 5        # header + initial state + 4 steps
    first = lines[1].split(",")
    assert float(first[0]) == 0.0 and len(first) == 13
    rep = json.loads((out / "report.json").read_text())
    assert rep["data"]["max_closed_form_deviation"] < 1e-9


def test_fringes_csv_appends_minima_rows(capsys):
    code, out, _ = run(["fringes", "points=41", "ymax=12",
                        "--format", "csv"], capsys)
    assert code == 0
    lines = out.splitlines()
    assert lines[0] == "y,density"
    grid = [tuple(map(float, ln.split(","))) for ln in lines[1:42]]
    minima = [tuple(map(float, ln.split(","))) for ln in lines[42:]]
    assert len(minima) == 2           # +-10 for the default geometry
    peak = max(v for _, v in grid)
    assert all(v < 1e-9 * peak for _, v in minima)
    assert sorted(abs(y) for y, _ in minima) == pytest.approx([10.0, 10.0],
                                                              abs=0.1)


def test_fringes_json_includes_profile_arrays(capsys):
    code, out, _ = run(["fringes", "points=5", "ymax=1"], capsys)
    assert code == 0
    data = json.loads(out)["data"]
    assert len(data["y"]) == len(data["density"]) == 5


# ---------------------------------------------------------------------------
# determinism

def strip_timing(path):
    rep = json.loads(path.read_text())
    rep.pop("timing", None)
    return json.dumps(rep, indent=2, sort_keys=False)


def test_reports_identical_across_runs_modulo_timing(tmp_path, capsys):
    argv = ["verify", "--claim", "inverse.photon", "--claim",
            "geodesic.closedform", "steps=50", "--seed", "7"]
    a, b = tmp_path / "a", tmp_path / "b"
    assert main(argv + ["--out", str(a)]) == 0
    assert main(argv + ["--out", str(b)]) == 0
    capsys.readouterr()
    assert strip_timing(a / "report.json") == strip_timing(b / "report.json")
