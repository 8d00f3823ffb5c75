#!/usr/bin/env python3
"""Run the full result set into out/: step responses, both transitions,
the bifurcation diagram, and the 630-point trim sweep.

Roughly two minutes end to end; the sweep dominates. Every artifact is
deterministic, so reruns produce byte-identical CSVs.
"""

from __future__ import annotations

import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from tailsitter_lab.analysis import (  # noqa: E402
    bifurcation_scan,
    trim_sweep,
    write_bifurcation_csv,
    write_jump_csv,
    write_trim_csv,
)
from tailsitter_lab.harness import SCENARIOS, ScenarioConfig, emit_outputs, load_spline, run_scenario  # noqa: E402
from tailsitter_lab.params import VehicleParams  # noqa: E402

OUT = Path(__file__).resolve().parents[1] / "out"


def main() -> None:
    spline = load_spline(None)
    OUT.mkdir(exist_ok=True)

    for name in sorted(SCENARIOS):
        t0 = time.perf_counter()
        config = ScenarioConfig(scenario=name)
        log = run_scenario(config, spline)
        emit_outputs(log, config, OUT / name)
        print(f"{name:26s} {log.n_steps:6d} steps  {time.perf_counter() - t0:6.1f} s")

    t0 = time.perf_counter()
    diagram = bifurcation_scan(0.0, 5.0, 0.01, spline)
    with open(OUT / "bifurcation.csv", "w", newline="") as fh:
        write_bifurcation_csv(diagram, fh)
    folds = ", ".join(f"{f:.3f}" for f in diagram.folds)
    print(f"{'bifurcation':26s} folds at a_v = {folds}  {time.perf_counter() - t0:6.1f} s")

    t0 = time.perf_counter()
    result = trim_sweep(params=VehicleParams(), spline=spline)
    with open(OUT / "trim_sweep.csv", "w", newline="") as fh:
        write_trim_csv(result, fh)
    with open(OUT / "trim_jumps.csv", "w", newline="") as fh:
        write_jump_csv(result, fh)
    n_bad = sum(not p.converged for p in result.points)
    print(f"{'trim-sweep':26s} {len(result.points)} points ({n_bad} unconverged)  "
          f"{time.perf_counter() - t0:6.1f} s")


if __name__ == "__main__":
    main()
