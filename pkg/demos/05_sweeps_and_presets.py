"""Sweeps over the receiver angle, as the command line runs them.

Builds a configuration from the same key=value pairs a config file would
hold, runs the analytic and Monte Carlo engines, and writes the CSV plus
its JSON manifest. The figure presets are lists of such configurations.
"""

import tempfile
from pathlib import Path

from outage_corr.sweep import parse_config, preset, rows_to_csv, run_sweep, write_outputs

cfg = parse_config(
    {
        "process": "ppp",
        "lambda": str(50 / 3.141592653589793),
        "p": "0.5",
        "snr_db": "10",
        "beta_db": "0",
        "theta_grid": "0:180:30",
        "engines": "analytic,mc",
        "n_topologies": "20000",
        "seed": "4",
        "record_runtime": "false",
    }
)
print(rows_to_csv(run_sweep(cfg)))

for name in ("fig2", "fig3"):
    configs = preset(name)
    print(f"{name}: {len(configs)} curves, {len(configs[0].theta_grid)} angles each")
    for c in configs[:2]:
        print("  ", type(c.process).__name__, c.process, "p =", c.radio.p, *c.notes)

with tempfile.TemporaryDirectory() as tmp:
    out = Path(tmp) / "fig3.csv"
    write_outputs(preset("fig3"), out, preset_name="fig3")
    print(f"\nwrote {sum(1 for _ in out.open()) - 1} rows and {out.with_name('fig3.manifest.json').name}")
