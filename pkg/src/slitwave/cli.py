"""Command-line front end.

Usage examples:
  # figure preset, both models, CSV to a file
  slitwave --scenario fig4a --output fig4a.csv

  # free-form single slit, JSON with analysis report
  slitwave --lambda 6.328e-7 --slit-width 1.76e-4 --slit-length inf \
      --thickness 1.1e-6 --format json
"""
from __future__ import annotations

import argparse
import logging
import math
import sys
from dataclasses import replace
from pathlib import Path

from . import __version__
from .analysis import (
    compare_patterns,
    find_extrema,
    first_nulls,
    integrated_intensity,
    missing_orders,
    scan_pattern,
)
from .core import INFINITE, ValidationError, WaveSpec
from .emit import series_columns, to_csv, to_json, write_text
from .scenarios import SCENARIOS, get_scenario

log = logging.getLogger("slitwave")

# flag name -> argparse dest
NUMERIC_FLAGS = {
    "lambda": "wavelength",
    "slit-width": "slit_width",
    "slit-length": "slit_length",
    "thickness": "thickness",
    "gap": "gap",
    "slits": "slits",
    "alpha": "alpha",
    "beta-min": "beta_min",
    "beta-max": "beta_max",
    "samples": "samples",
    "modes-max": "modes_max",
    "tail-tol": "tail_tol",
    "distance": "distance",
}


def _real(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed number: {text!r}") from None
    if not math.isfinite(value):
        raise argparse.ArgumentTypeError(f"number must be finite: {text!r}")
    return value


def _length(text: str) -> float:
    if text.strip().lower() in ("inf", "infinite", "infinity"):
        return INFINITE
    return _real(text)


def _count(text: str) -> int:
    try:
        return int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"malformed integer: {text!r}") from None


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="slitwave",
        description="Diffraction patterns of thick rectangular slits from the mode-expansion model.")
    ap.add_argument("--version", action="version", version=__version__)
    ap.add_argument("--scenario", help="figure preset (see --list-scenarios)")
    ap.add_argument("--list-scenarios", action="store_true", help="print preset names and exit")
    ap.add_argument("--config", help="flat key=value file with flag values; flags override it")
    ap.add_argument("--lambda", dest="wavelength", type=_real, help="wavelength [m]")
    ap.add_argument("--slit-width", type=_real, help="slit width a [m]")
    ap.add_argument("--slit-length", type=_length, help="slit length b [m] or 'inf'")
    ap.add_argument("--thickness", type=_real, help="slit thickness c' [m]")
    ap.add_argument("--gap", type=_real, help="edge-to-edge gap d between slits [m]")
    ap.add_argument("--slits", type=_count, help="number of slits N")
    ap.add_argument("--distance", type=_real, help="slit-to-screen distance R [m]")
    ap.add_argument("--alpha", type=_real, help="fixed angle alpha [rad]")
    ap.add_argument("--beta-min", type=_real, help="scan start [rad]")
    ap.add_argument("--beta-max", type=_real, help="scan end [rad]")
    ap.add_argument("--samples", type=_count, help="number of beta samples")
    ap.add_argument("--modes-max", type=_count, help="mode index cap")
    ap.add_argument("--tail-tol", type=_real, help="relative tail tolerance")
    ap.add_argument("--model", choices=("quantum", "classical", "both"), default=None)
    ap.add_argument("--format", choices=("csv", "json"), default=None)
    ap.add_argument("--normalize", choices=("peak", "none"), default=None)
    ap.add_argument("--output", help="output path (default: stdout)")
    ap.add_argument("-v", "--verbose", action="store_true")
    return ap


def read_config(path) -> dict:
    """Parse a flat ``key = value`` file; '#' starts a comment."""
    values = {}
    for lineno, raw in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        values[key.lstrip("-").replace("_", "-")] = value
    return values


def _apply_config(parser: argparse.ArgumentParser, argv) -> argparse.Namespace:
    """Parse argv with config-file values as defaults, so flags win."""
    pre, _ = parser.parse_known_args(argv)
    if pre.config:
        try:
            config = read_config(pre.config)
        except (OSError, ValueError) as exc:
            parser.error(str(exc))
        defaults = {}
        for key, text in config.items():
            action = next((a for a in parser._actions if f"--{key}" in a.option_strings), None)
            if action is None or action.dest in ("config", "help", "version"):
                parser.error(f"config: unknown key {key!r}")
            try:
                defaults[action.dest] = action.type(text) if action.type else text
            except argparse.ArgumentTypeError as exc:
                parser.error(f"config: {key}: {exc}")
            if action.choices and defaults[action.dest] not in action.choices:
                parser.error(f"config: {key}: invalid choice {text!r}")
        parser.set_defaults(**defaults)
    return parser.parse_args(argv)


def resolve(args: argparse.Namespace):
    """Scenario (or the single-slit base case) with explicit values applied."""
    base = get_scenario(args.scenario) if args.scenario else get_scenario("fig5")
    g, w, scan, trunc = base.geometry, base.wave, base.scan, base.trunc
    overrides = {name: getattr(args, dest) for name, dest in NUMERIC_FLAGS.items()
                 if getattr(args, dest) is not None}
    if args.scenario:
        for name, value in overrides.items():
            log.info("scenario %s: overriding %s with %s", args.scenario, name, value)

    if args.wavelength is not None:
        w = WaveSpec(args.wavelength)
    geo = {}
    for dest, attr in (("slit_width", "a"), ("slit_length", "b"), ("thickness", "c_prime"),
                       ("gap", "d"), ("slits", "n_slits")):
        if getattr(args, dest) is not None:
            geo[attr] = getattr(args, dest)
    if geo:
        g = replace(g, **geo)
    sc = {}
    for dest, attr in (("distance", "R"), ("alpha", "alpha_fixed"), ("beta_min", "beta_min"),
                       ("beta_max", "beta_max"), ("samples", "n_samples"), ("model", "model")):
        if getattr(args, dest) is not None:
            sc[attr] = getattr(args, dest)
    if sc:
        scan = replace(scan, **sc)
    tr = {}
    if args.modes_max is not None:
        tr["max_mode_index"] = args.modes_max
    if args.tail_tol is not None:
        tr["tail_tolerance"] = args.tail_tol
    if tr:
        trunc = replace(trunc, **tr)
    name = base.name if args.scenario else "custom"
    return replace(base, name=name, geometry=g, wave=w, scan=scan, trunc=trunc)


def analyse(series, scenario) -> dict:
    g, w = scenario.geometry, scenario.wave
    report = find_extrema(series)
    out = {
        "peak_intensity": float(series.intensity.max()),
        "integrated_intensity": integrated_intensity(series),
        "principal_orders": [p[3] for p in report.principal_maxima],
        "secondary_maxima": len(report.secondary_maxima),
        "minima": len(report.minima),
        "secondary_maxima_per_gap": report.secondary_maxima_per_gap,
        "minima_per_gap": report.minima_per_gap,
        "gaps": [
            {"left_order": gp.left_order, "right_order": gp.right_order,
             "secondary_maxima": gp.secondary_maxima, "minima": gp.minima}
            for gp in report.gaps
        ],
        "missing_orders": None,
        "first_nulls_sin_beta": None,
    }
    if g.n_slits >= 2:
        try:
            out["missing_orders"] = missing_orders(series, g, w)
        except ValidationError:
            pass
    if series.intensity.max() > 0:
        try:
            out["first_nulls_sin_beta"] = list(first_nulls(series))
        except ValidationError:
            pass
    return out


def _parameters(s) -> dict:
    g, w, scan, trunc = s.geometry, s.wave, s.scan, s.trunc
    return {
        "wavelength": w.wavelength,
        "slit_width": g.a,
        "slit_length": "inf" if g.infinite_length else g.b,
        "thickness": g.c_prime,
        "gap": g.d,
        "pitch": g.pitch,
        "slits": g.n_slits,
        "distance": scan.R,
        "alpha": scan.alpha_fixed,
        "beta_min": scan.beta_min,
        "beta_max": scan.beta_max,
        "samples": scan.n_samples,
        "modes_max": trunc.max_mode_index,
        "tail_tol": trunc.tail_tolerance,
        "model": scan.model,
        "polarization": [[v.real, v.imag] for v in s.polarization.A],
    }


def compute(s, normalize: str = "peak", fmt: str = "csv") -> str:
    """Run the scenario's models and render the requested format."""
    model = s.scan.model
    quantum = classical = None
    if model in ("quantum", "both"):
        quantum = scan_pattern("quantum", s.geometry, s.wave, s.polarization, s.scan, s.trunc)
    if model in ("classical", "both"):
        classical = scan_pattern("classical", s.geometry, s.wave, s.polarization, s.scan, s.trunc)
    columns = series_columns(quantum, classical, normalize)
    if fmt == "csv":
        return to_csv(columns)
    analysis = {}
    if quantum is not None:
        analysis["quantum"] = analyse(quantum, s)
    if classical is not None:
        analysis["classical"] = analyse(classical, s)
    if quantum is not None and classical is not None:
        m = compare_patterns(quantum, classical)
        analysis["agreement"] = {"rms": m.rms, "max_peak_offset": m.max_peak_offset,
                                 "secondary_ratio": m.secondary_ratio}
    payload = {
        "scenario": s.name,
        "parameters": _parameters(s),
        "normalize": normalize,
        "columns": list(columns),
        "series": columns,
        "analysis": analysis,
    }
    return to_json(payload)


def run(argv=None) -> int:
    parser = build_parser()
    args = _apply_config(parser, argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="slitwave: %(message)s", stream=sys.stderr)
    if args.list_scenarios:
        for name, s in SCENARIOS.items():
            print(f"{name:16s} {s.description}")
        return 0
    try:
        scenario = resolve(args)
        text = compute(scenario, args.normalize or "peak", args.format or "csv")
    except KeyError as exc:
        print(f"slitwave: error: {exc.args[0]}", file=sys.stderr)
        return 2
    except ValidationError as exc:
        print(f"slitwave: error: {exc.message}", file=sys.stderr)
        return 2
    if args.output:
        try:
            write_text(args.output, text)
        except OSError as exc:
            print(f"slitwave: error: cannot write {args.output}: {exc.strerror}", file=sys.stderr)
            return 1
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
