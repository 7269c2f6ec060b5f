import json

import pytest

from multop.cli import main


def run(tmp_path, *argv):
    return main(list(argv) + ["--out", str(tmp_path)])


def test_spectrum_ok(tmp_path):
    assert run(tmp_path, "spectrum", "--N", "40") == 0
    text = (tmp_path / "spectrum_pants_40.csv").read_text()
    assert text.splitlines()[0] == "target,value,nearest_eig,err"
    assert "simple" in text and "band-lo" in text


def test_spectrum_annulus_disk(tmp_path):
    assert run(tmp_path, "spectrum", "--kind", "annulus", "--N", "20") == 0
    assert run(tmp_path, "spectrum", "--kind", "disk", "--N", "20") == 0
    assert (tmp_path / "spectrum_annulus_20.csv").exists()
    assert (tmp_path / "spectrum_disk_20.csv").exists()


def test_spectrum_dump(tmp_path):
    assert run(tmp_path, "spectrum", "--N", "30", "--dump", "triplets") == 0
    assert (tmp_path / "spectrum_matrix_pants_30.txt").exists()


def test_invalid_params_exit_1(tmp_path, capsys):
    assert run(tmp_path, "spectrum", "--r1", "0.4", "--r2", "0.4") == 1
    assert "error:" in capsys.readouterr().err


def test_malformed_grid_exit_1(tmp_path, capsys):
    assert run(tmp_path, "pseudospectrum", "--grid", "1,2,3") == 1
    assert "grid" in capsys.readouterr().err


def test_unknown_command_exit_2_argparse(tmp_path):
    with pytest.raises(SystemExit):
        run(tmp_path, "frobnicate")


def test_pseudospectrum_csv_and_svg(tmp_path):
    code = run(
        tmp_path, "pseudospectrum", "--N", "15", "--grid=-1.2,1.2,-1.2,1.2,9", "--svg"
    )
    assert code == 0
    lines = (tmp_path / "pseudospectrum_pants_15.csv").read_text().splitlines()
    assert len(lines) == 82
    assert (tmp_path / "pseudospectrum_pants_15.svg").exists()


def test_pseudospectrum_deterministic(tmp_path):
    a = tmp_path / "a"
    b = tmp_path / "b"
    for d in (a, b):
        d.mkdir()
        assert main(
            ["pseudospectrum", "--N", "12", "--grid=-1,1,-1,1,7", "--svg",
             "--out", str(d)]
        ) == 0
    name = "pseudospectrum_pants_12"
    assert (a / f"{name}.csv").read_bytes() == (b / f"{name}.csv").read_bytes()
    assert (a / f"{name}.svg").read_bytes() == (b / f"{name}.svg").read_bytes()


def test_resolvent_check(tmp_path):
    code = run(tmp_path, "resolvent-check", "--N", "100", "--samples", "5")
    assert code == 0
    lines = (tmp_path / "resolvent-check_pants_100.csv").read_text().splitlines()
    regions = [ln.split(",")[0] for ln in lines[1:]]
    assert regions == ["z:hole1", "z:hole2", "z:outside", "zzstar:low", "zzstar:high"]
    assert all(float(ln.split(",")[1]) <= 1e-9 for ln in lines[1:])


def test_resolvent_check_annulus(tmp_path):
    assert run(tmp_path, "resolvent-check", "--kind", "annulus", "--N", "40",
               "--samples", "5") == 0


def test_commutator_report(tmp_path):
    assert run(tmp_path, "commutator-report", "--N", "30") == 0
    data = json.loads((tmp_path / "commutator-report_pants_30.json").read_text())
    assert sorted({r["step"] for r in data}) == list(range(1, 9))
    assert all(r["max_deviation"] <= 1e-10 for r in data)


def test_toeplitz_check(tmp_path):
    assert run(tmp_path, "toeplitz-check", "--N", "30") == 0
    data = json.loads((tmp_path / "toeplitz-check_pants_30.json").read_text())
    assert data["offsupport_leak"] <= 1e-12
    assert data["symbol_of_z"]["phi3"] == [[0, [0.5, 0.0]], [1, [0.2, 0.0]]]
    assert (tmp_path / "toeplitz-check_compactness_pants_30.csv").exists()


def test_convergence(tmp_path):
    assert run(tmp_path, "convergence", "--N", "40", "--N-list", "10,20,40") == 0
    lines = (tmp_path / "convergence_pants_40.csv").read_text().splitlines()
    assert lines[0].startswith("N,err_lambda_star")
    assert len(lines) == 4


def test_config_file(tmp_path):
    cfg = tmp_path / "cfg.json"
    cfg.write_text(json.dumps({"kind": "pants", "a": 0.5, "r1": 0.2, "r2": 0.2,
                               "N": 25}))
    assert run(tmp_path, "spectrum", "--config", str(cfg)) == 0
    assert (tmp_path / "spectrum_pants_25.csv").exists()


def test_missing_config_exit_1(tmp_path, capsys):
    assert run(tmp_path, "spectrum", "--config", str(tmp_path / "nope.json")) == 1
    assert "error:" in capsys.readouterr().err
