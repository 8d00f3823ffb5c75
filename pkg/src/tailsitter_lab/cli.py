"""Command-line entry point.

Subcommands: ``sim`` (run one scenario and emit artifacts), ``trim-sweep``
(equilibrium sweep over speed and wake efficiency), ``bifurcation``
(equilibrium diagram over aerodynamic loading), ``list-scenarios``.
Exit codes: 0 success, 1 usage, 2 data/config error, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import configparser
import dataclasses
import sys
from pathlib import Path

from .airfoil import AirfoilError
from .analysis import bifurcation_scan, trim_sweep, write_bifurcation_csv, write_jump_csv, write_trim_csv
from .dynamics import NonFiniteState
from .harness import SCENARIOS, ConfigError, DataError, ScenarioConfig, emit_outputs, load_spline, run_scenario
from .params import Gains, VehicleParams

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2
EXIT_NUMERIC = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse defaults to exit code 2
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="tailsitter-lab", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--airfoil", help="polar CSV (default: bundled table)")
        p.add_argument("--out", help="output directory (default: out)")

    p_sim = sub.add_parser("sim", help="run one scenario")
    common(p_sim)
    p_sim.add_argument("--config", help="INI configuration file")
    p_sim.add_argument("--scenario", help="scenario name (see list-scenarios)")
    p_sim.add_argument("--dt", type=float, help="control/integration period [s]")
    p_sim.add_argument("--duration", type=float, help="override run length [s]")
    p_sim.add_argument("--eta", type=float, help="prop-wash efficiency in [0, 1]")

    p_sweep = sub.add_parser("trim-sweep", help="trim over speeds and wake efficiencies")
    common(p_sweep)
    p_sweep.add_argument("--eta", type=float, help="sweep only this efficiency")
    p_sweep.add_argument("--settle", type=float, default=5.0, help="settling sim length [s]")

    p_bif = sub.add_parser("bifurcation", help="equilibrium diagram over a_v")
    common(p_bif)
    p_bif.add_argument("--av-min", type=float, default=0.0)
    p_bif.add_argument("--av-max", type=float, default=5.0)
    p_bif.add_argument("--av-step", type=float, default=0.01)

    sub.add_parser("list-scenarios", help="print the built-in scenario names")
    return parser


_SCENARIO_KEYS = {
    f.name: f.type
    for f in dataclasses.fields(ScenarioConfig)
    if f.name not in ("params", "gains")
}


def _coerce(text: str, like_default) -> object:
    if isinstance(like_default, bool):
        return text.strip().lower() in ("1", "true", "yes", "on")
    if isinstance(like_default, int) and not isinstance(like_default, bool):
        return int(text)
    if isinstance(like_default, float):
        return float(text)
    return text


def read_config_file(path: str) -> dict:
    """Parse the INI run configuration into keyword overrides.

    Sections: [scenario] run settings and trajectory parameters keyed by
    ScenarioConfig field names (``name`` selects the scenario); [vehicle]
    and [gains] override physical constants; [output] has ``dir`` and
    ``airfoil``.
    """
    parser = configparser.ConfigParser()
    found = parser.read(path)
    if not found:
        raise ConfigError(f"config file not found: {path}")
    out: dict = {}
    defaults_cfg = ScenarioConfig(scenario="hover-step")
    if parser.has_section("scenario"):
        for key, value in parser.items("scenario"):
            if key == "name":
                out["scenario"] = value
            elif hasattr(defaults_cfg, key):
                out[key] = _coerce(value, getattr(defaults_cfg, key))
            else:
                raise ConfigError(f"unknown [scenario] key: {key}")
    for section, cls in (("vehicle", VehicleParams), ("gains", Gains)):
        if parser.has_section(section):
            names = {f.name for f in dataclasses.fields(cls)}
            overrides = {}
            for key, value in parser.items(section):
                if key not in names:
                    raise ConfigError(f"unknown [{section}] key: {key}")
                overrides[key] = float(value)
            out[section] = overrides
    if parser.has_section("output"):
        for key, value in parser.items("output"):
            if key == "dir":
                out["out_dir"] = value
            elif key == "airfoil":
                out["airfoil"] = value
            else:
                raise ConfigError(f"unknown [output] key: {key}")
    return out


def _config_from_args(args) -> ScenarioConfig:
    overrides: dict = {}
    if args.config:
        overrides.update(read_config_file(args.config))
    vehicle = overrides.pop("vehicle", {})
    gains = overrides.pop("gains", {})
    if args.scenario:
        overrides["scenario"] = args.scenario
    if args.airfoil:
        overrides["airfoil"] = args.airfoil
    if args.out:
        overrides["out_dir"] = args.out
    if args.dt is not None:
        overrides["dt"] = args.dt
    if args.duration is not None:
        overrides["duration"] = args.duration
    if args.eta is not None:
        vehicle["eta"] = args.eta
    if "scenario" not in overrides:
        raise ConfigError("no scenario selected (use --scenario or a config file)")
    try:
        overrides["params"] = VehicleParams(**vehicle)
        overrides["gains"] = Gains(**gains)
        return ScenarioConfig(**overrides)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ConfigError):
            raise
        raise ConfigError(str(exc)) from exc


def _cmd_sim(args) -> int:
    config = _config_from_args(args)
    spline = load_spline(config.airfoil)
    log = run_scenario(config, spline)
    paths = emit_outputs(log, config, config.out_dir or "out")
    print(f"{config.scenario}: {log.n_steps} steps -> {paths[0].parent}")
    return EXIT_OK


def _cmd_trim_sweep(args) -> int:
    spline = load_spline(args.airfoil)
    eta_range = [args.eta] if args.eta is not None else None
    result = trim_sweep(
        eta_range=eta_range, params=VehicleParams(), spline=spline, settle=args.settle
    )
    out = Path(args.out or "out")
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "trim_sweep.csv", "w", newline="") as fh:
        write_trim_csv(result, fh)
    with open(out / "trim_jumps.csv", "w", newline="") as fh:
        write_jump_csv(result, fh)
    n_bad = sum(not p.converged for p in result.points)
    print(f"trim-sweep: {len(result.points)} points ({n_bad} unconverged) -> {out}")
    return EXIT_OK


def _cmd_bifurcation(args) -> int:
    spline = load_spline(args.airfoil)
    diagram = bifurcation_scan(args.av_min, args.av_max, args.av_step, spline)
    out = Path(args.out or "out")
    out.mkdir(parents=True, exist_ok=True)
    with open(out / "bifurcation.csv", "w", newline="") as fh:
        write_bifurcation_csv(diagram, fh)
    folds = ", ".join(f"{f:.3f}" for f in diagram.folds) or "none"
    print(f"bifurcation: folds at a_v = {folds} -> {out / 'bifurcation.csv'}")
    return EXIT_OK


def cli_main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "list-scenarios":
            for name in sorted(SCENARIOS):
                print(name)
            return EXIT_OK
        if args.command == "sim":
            return _cmd_sim(args)
        if args.command == "trim-sweep":
            return _cmd_trim_sweep(args)
        if args.command == "bifurcation":
            return _cmd_bifurcation(args)
        return EXIT_USAGE
    except (ConfigError, DataError, AirfoilError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DATA
    except (NonFiniteState, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC


def main() -> None:
    sys.exit(cli_main())


if __name__ == "__main__":
    main()
