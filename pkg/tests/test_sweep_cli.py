import csv
import io
import json
import math

import pytest

from outage_corr import cli, sweep
from outage_corr.geom_bpp import BppModel
from outage_corr.geom_tcp import TcpModel
from outage_corr.specfun import NumericalError
from outage_corr.sweep import (
    CSV_COLUMNS,
    ConfigError,
    load_config,
    parse_config,
    parse_theta_grid,
    preset,
    read_key_values,
    run_sweep,
)

BASE = """\
# two receivers, fixed count
process = bpp
m = 50
p = 0.1
snr_db = 10
beta_db = 0
theta_grid = 0,90,180
"""


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "run.cfg"
    path.write_text(BASE)
    return path


def read_rows(path):
    return list(csv.DictReader(io.StringIO(path.read_text())))


def test_theta_grid_forms():
    assert parse_theta_grid("0:20:10") == (0.0, 10.0, 20.0)
    assert parse_theta_grid("10, 200") == (10.0, 160.0)
    for bad in ("", "a,b", "0:10:0", "400"):
        with pytest.raises(ConfigError):
            parse_theta_grid(bad)


def test_parse_converts_decibels():
    cfg = parse_config(read_key_values(BASE))
    assert cfg.radio.snr == pytest.approx(10.0)
    assert cfg.radio.beta == pytest.approx(1.0)
    assert cfg.process == BppModel(50)
    assert cfg.engines == ("analytic",)


@pytest.mark.parametrize(
    "extra,field",
    [
        ("p = 2", "radio"),
        ("bogus = 1", "bogus"),
        ("m = many", "m"),
        ("r0 = 3", "geometry"),
        ("engines = analytic,fast", "engines"),
        ("n_topologies = 0", "mc"),
    ],
)
def test_config_errors_name_the_field(extra, field):
    with pytest.raises(ConfigError) as info:
        parse_config(read_key_values(BASE + extra + "\n"))
    assert info.value.field_path == field


def test_tcp_requires_its_fields():
    with pytest.raises(ConfigError) as info:
        parse_config({"process": "tcp", "lambda_prime": "5"})
    assert info.value.field_path == "sigma"


def test_malformed_line():
    with pytest.raises(ConfigError):
        read_key_values("process bpp\n")


def test_coincident_grid_gives_one():
    cfg = parse_config({"process": "ppp", "lambda": "10", "theta_grid": "0"})
    (row,) = run_sweep(cfg)
    assert row["zeta"] == "1"
    assert row["std_err_zeta"] == ""


def test_degenerate_row():
    cfg = parse_config({"process": "bpp", "m": "0", "theta_grid": "30"})
    (row,) = run_sweep(cfg)
    assert row["zeta"] == "NA"
    assert row["degenerate"] == "1"


def test_rows_sorted_by_theta_then_engine():
    cfg = parse_config({"process": "bpp", "m": "5", "theta_grid": "90,0,45",
                        "engines": "mc,analytic", "n_topologies": "500"})
    rows = run_sweep(cfg)
    keys = [(float(r["theta_deg"]), r["seed"] != "") for r in rows]
    assert keys == sorted(keys)
    assert len(rows) == 6


def test_sweep_cli_writes_csv_and_manifest(config_file, tmp_path):
    out = tmp_path / "a.csv"
    assert cli.main(["sweep", "--config", str(config_file), "--out", str(out)]) == 0
    text = out.read_text()
    assert text.splitlines()[0] == ",".join(CSV_COLUMNS)
    rows = read_rows(out)
    assert [r["theta_deg"] for r in rows] == ["0", "90", "180"]
    for r in rows:
        digits = r["first_moment"].lstrip("0.").replace(".", "").split("e")[0]
        assert len(digits) <= 9
    man = json.loads((tmp_path / "a.manifest.json").read_text())
    assert man["curves"][0]["radio"]["snr_db"] == 10.0
    assert man["curves"][0]["radio"]["snr"] == pytest.approx(10.0)
    assert set(man["versions"]) >= {"outage_corr", "numpy", "scipy", "python"}


def test_reruns_are_byte_identical(config_file, tmp_path):
    outs = []
    for name in ("x.csv", "y.csv"):
        out = tmp_path / name
        argv = ["sweep", "--config", str(config_file), "--out", str(out), "--engines", "analytic,mc",
                "--seed", "5", "--set", "n_topologies=3000", "--no-runtime"]
        assert cli.main(argv) == 0
        outs.append(out)
    assert outs[0].read_bytes() == outs[1].read_bytes()
    a = json.loads((tmp_path / "x.manifest.json").read_text())
    assert a["seed"] == 5


def test_mc_worker_count_does_not_change_output(config_file, tmp_path):
    blobs = []
    for workers in (1, 4):
        out = tmp_path / f"w{workers}.csv"
        argv = ["sweep", "--config", str(config_file), "--out", str(out), "--engines", "mc",
                "--set", "n_topologies=4500", "--set", f"mc_workers={workers}", "--no-runtime"]
        assert cli.main(argv) == 0
        blobs.append(out.read_bytes())
    assert blobs[0] == blobs[1]


def test_overrides(config_file, tmp_path):
    out = tmp_path / "o.csv"
    argv = ["sweep", "--config", str(config_file), "--out", str(out), "--process", "tcp",
            "--set", "lambda_prime=5", "--set", "sigma=0.3", "--theta-grid", "10:30:10"]
    assert cli.main(argv) == 0
    rows = read_rows(out)
    assert [r["theta_deg"] for r in rows] == ["10", "20", "30"]
    assert rows[0]["process"].startswith("tcp:")


def test_exit_code_config_error(config_file, tmp_path, capsys):
    assert cli.main(["sweep", "--config", str(config_file), "--set", "p=7", "--out", str(tmp_path / "e.csv")]) == 2
    assert "radio" in capsys.readouterr().err
    assert cli.main(["sweep", "--config", str(tmp_path / "missing.cfg")]) == 2


def test_exit_code_numerical_failure(config_file, tmp_path, monkeypatch):
    def broken(*args, **kwargs):
        raise NumericalError("series did not converge after 200000 terms")

    monkeypatch.setattr(sweep, "analytic_moments", broken)
    assert cli.main(["sweep", "--config", str(config_file), "--out", str(tmp_path / "n.csv")]) == 3


def test_argparse_usage_error_exit_code():
    with pytest.raises(SystemExit) as info:
        cli.main(["sweep"])
    assert info.value.code == 2


def test_fig2_preset_layout():
    configs = preset("fig2")
    assert len(configs) == 6
    dens = sorted({round(sweep.density_param(c.process, c.geometry, c.radio) * math.pi, 9) for c in configs})
    assert dens == [5.0, 25.0, 50.0]
    for c in configs:
        assert c.theta_grid == tuple(float(t) for t in range(5, 181, 5))
        assert c.radio.alpha == 3.5
        assert c.radio.snr == pytest.approx(10.0)
        assert c.radio.beta == pytest.approx(1.0)


def test_fig3_preset_is_labelled():
    configs = preset("fig3")
    assert len(configs) == 6
    grid = sorted((round(c.process.lambda_prime * c.radio.p, 9), c.process.sigma) for c in configs)
    assert grid == [(1.0, 0.25), (1.0, 0.5), (5.0, 0.25), (5.0, 0.5), (20.0, 0.25), (20.0, 0.5)]
    for c in configs:
        assert isinstance(c.process, TcpModel)
        assert c.process.nu == 0.0
        assert any("implementer-chosen" in n for n in c.notes)


def test_preset_cli(tmp_path):
    out = tmp_path / "f3.csv"
    assert cli.main(["preset", "fig3", "--engines", "analytic", "--out", str(out), "--no-runtime"]) == 0
    rows = read_rows(out)
    assert len(rows) == 6 * 36
    man = json.loads((tmp_path / "f3.manifest.json").read_text())
    assert man["preset"] == "fig3"
    assert "implementer-chosen" in man["curves"][0]["notes"][0]


def test_sweep_preset_flag_matches_preset_command(tmp_path):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    assert cli.main(["preset", "fig2", "--engines", "analytic", "--out", str(a), "--no-runtime"]) == 0
    assert cli.main(["sweep", "--preset", "fig2", "--out", str(b), "--no-runtime"]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_load_config_overrides(config_file):
    cfg = load_config(config_file, {"seed": "11", "out": None})
    assert cfg.mc.seed == 11
