import csv
import io
import json
import subprocess
import sys
from pathlib import Path

import pytest

from twistkick.cli import PROFILE_HEADER, fmt, main


def run(*args):
    return subprocess.run([sys.executable, "-m", "twistkick", *args], capture_output=True, text=True)


def run_inproc(capsys, *args):
    code = main(list(args))
    out, err = capsys.readouterr()
    return code, out, err


def rows_of(text):
    return list(csv.reader(io.StringIO(text)))


def test_help():
    cp = run("--help")
    assert cp.returncode == 0
    for name in ("profile", "paper-table", "cylinder", "rotor", "offaxis", "pressure", "tractor"):
        assert name in cp.stdout


def test_profile_fig1b(tmp_path, capsys):
    out = tmp_path / "jz.csv"
    code, _, err = run_inproc(capsys, "profile", "--quantity", "jz", "--mgamma", "2", "--sigma", "1", "--theta", "0.1",
                              "--w0", "10lambda", "--n-points", "200", "--out", str(out))
    assert code == 0, err
    rows = rows_of(out.read_text())
    assert rows[0] == PROFILE_HEADER
    assert len(rows) == 201
    assert all(r[3] == "N*s/m^2" for r in rows[1:])
    assert any(float(r[2]) < 0 for r in rows[1:])
    assert all(float(r[1]) >= 0 for r in rows[1:])


def test_profile_deterministic(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    for path in (a, b):
        cp = run("profile", "--quantity", "pphi", "--n-points", "50", "--out", str(path))
        assert cp.returncode == 0, cp.stderr
    assert a.read_bytes() == b.read_bytes()


def test_profile_numbers_round_trip(capsys):
    code, out, _ = run_inproc(capsys, "profile", "--n-points", "20", "--quantity", "sz")
    assert code == 0
    for row in rows_of(out)[1:]:
        for cell in row[:3]:
            assert fmt(float(cell)) == cell


def test_profile_single_choice_leaves_gap(capsys):
    code, out, _ = run_inproc(capsys, "profile", "--n-points", "5", "--choice", "canonical")
    assert code == 0
    assert all(r[2] == "" for r in rows_of(out)[1:])


def test_profile_too_few_points():
    cp = run("profile", "--n-points", "1")
    assert cp.returncode == 1
    assert "n_points" in cp.stderr


def test_usage_error_exit_code():
    cp = run("profile", "--quantity", "bogus")
    assert cp.returncode == 1


def test_bad_unit(capsys):
    code, _, err = run_inproc(capsys, "profile", "--wavelength", "729furlongs")
    assert code == 1
    assert "wavelength" in err


def test_pure_bessel_needs_amplitude(capsys):
    code, _, err = run_inproc(capsys, "pressure", "--w0", "none")
    assert code == 1
    code, out, _ = run_inproc(capsys, "pressure", "--w0", "none", "--a0", "1e-10", "--n-points", "5")
    assert code == 0


def test_json_round_trip(tmp_path, capsys):
    first = tmp_path / "first.json"
    code, _, _ = run_inproc(capsys, "profile", "--quantity", "jz", "--mgamma", "1", "--w0", "8lambda",
                            "--rho-max", "12um", "--n-points", "40", "--format", "json", "--out", str(first))
    assert code == 0
    second = tmp_path / "second.json"
    code, _, err = run_inproc(capsys, "profile", "--beam-config", str(first), "--format", "json", "--out", str(second))
    assert code == 0, err
    a, b = json.loads(first.read_text()), json.loads(second.read_text())
    assert a["rows"] == b["rows"]
    assert a["config"] == b["config"]


def test_config_file_with_units_and_override(tmp_path, capsys):
    cfg = tmp_path / "beam.json"
    cfg.write_text(json.dumps({"wavelength": "729nm", "theta": 0.1, "mgamma": 2, "power": "2mW", "w0": "10lambda"}))
    code, out, _ = run_inproc(capsys, "paper-table", "--beam-config", str(cfg), "--power", "4mW")
    assert code == 0
    assert out.count("PASS") == 4


def test_config_unknown_key(tmp_path, capsys):
    cfg = tmp_path / "beam.json"
    cfg.write_text(json.dumps({"wavelength": "729nm", "colour": "blue"}))
    code, _, err = run_inproc(capsys, "profile", "--beam-config", str(cfg))
    assert code == 1
    assert "colour" in err


def test_config_bad_json_reports_line(tmp_path, capsys):
    cfg = tmp_path / "beam.json"
    cfg.write_text('{\n  "wavelength": "729nm",\n  oops\n}')
    code, _, err = run_inproc(capsys, "profile", "--beam-config", str(cfg))
    assert code == 1
    assert "line 3" in err


def test_paper_table_default():
    cp = run("paper-table")
    assert cp.returncode == 0, cp.stderr
    rows = rows_of(cp.stdout)
    assert len(rows) == 5
    assert [r[-1] for r in rows[1:]] == ["PASS"] * 4


def test_paper_table_power_doubles_alpha(capsys):
    _, base, _ = run_inproc(capsys, "paper-table")
    _, doubled, _ = run_inproc(capsys, "paper-table", "--power", "8mW")
    a = {(r[0], r[1]): float(r[2]) for r in rows_of(base)[1:]}
    b = {(r[0], r[1]): float(r[2]) for r in rows_of(doubled)[1:]}
    for key in a:
        assert b[key] == pytest.approx(2 * a[key], rel=1e-12)


def test_paper_table_single_choice(capsys):
    code, out, _ = run_inproc(capsys, "paper-table", "--choice", "canonical")
    assert code == 0
    assert len(rows_of(out)) == 3


def test_cylinder_results(capsys):
    code, out, _ = run_inproc(capsys, "cylinder", "--format", "json")
    assert code == 0
    data = json.loads(out)
    names = {(r[0], r[1]) for r in data["rows"]}
    assert ("terminal_frequency", "belinfante") in names
    assert ("moment_of_inertia", "") in names


def test_rotor_single_and_sweep(capsys):
    code, out, _ = run_inproc(capsys, "rotor", "--radius", "1um", "--choice", "canonical")
    assert code == 0
    assert float(rows_of(out)[1][2]) == pytest.approx(2.295e11, rel=1e-3)
    code, out, _ = run_inproc(capsys, "rotor", "--rho-max", "10um", "--n-points", "100")
    assert code == 0
    assert rows_of(out)[0] == PROFILE_HEADER
    assert len(rows_of(out)) == 101


def test_rotor_exact_pole_exit_code(capsys):
    from twistkick.beams import BeamSpec, wavenumbers
    from twistkick.specfun import bessel_zeros
    spec = BeamSpec(729e-9, 0.1, 2, 1)
    rho = bessel_zeros(1, 5.0)[0] / wavenumbers(spec).kappa
    code, _, err = run_inproc(capsys, "rotor", "--radius", repr(float(rho)), "--choice", "belinfante")
    assert code == 2
    assert "domain" in err


def test_offaxis_needs_calibration(capsys):
    code, _, _ = run_inproc(capsys, "offaxis")
    assert code == 1
    code, out, _ = run_inproc(capsys, "offaxis", "--calibration", "1e9", "--n-points", "10")
    assert code == 0
    assert rows_of(out)[1][3] == "rad/s"


def test_pressure_table(capsys):
    code, out, _ = run_inproc(capsys, "pressure", "--theta", "0.5", "--n-points", "30")
    assert code == 0
    rows = rows_of(out)[1:]
    assert all(float(r[1]) >= 0 for r in rows)


def test_tractor_commands(capsys):
    code, out, _ = run_inproc(capsys, "tractor", "--choice", "canonical")
    assert code == 0
    assert "no negative-force regions" in out
    code, out, _ = run_inproc(capsys, "tractor", "--theta", "0.5", "--mgamma", "2", "--helicity", "1",
                              "--rho-max", "5um")
    assert code == 0
    rows = rows_of(out)[1:]
    assert len(rows) >= 1
    assert all(float(r[4]) < 0 for r in rows)


def test_tractor_zero_rho_max():
    cp = run("tractor", "--rho-max", "0")
    assert cp.returncode == 1


def test_tractor_json(capsys):
    code, out, _ = run_inproc(capsys, "tractor", "--theta", "0.5", "--rho-max", "3um", "--format", "json")
    assert code == 0
    data = json.loads(out)
    assert data["columns"] == ["choice", "rho_lo_m", "rho_hi_m", "rho_mid_m", "force_mid_N"]
    assert data["rows"]
