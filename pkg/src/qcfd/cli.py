"""Command-line front end.

Subcommands: simulate (run a scenario config, write CSV/SVG), figure (run a
shipped preset), floquet (print the mode constants for a config), compare
(difference metrics between two CSV outputs). Exit codes: 0 success, 2
configuration problems, 3 numerical failures, 4 I/O failures.
"""

from __future__ import annotations

import argparse
import sys

from . import harness
from .errors import ConfigError, NumericError, QcfdError
from .fbrwa import lambda_eff
from .floquet import floquet_solve


def _add_override_flags(parser):
    parser.add_argument("--lambda", dest="lam", type=str, default=None,
                        help="coupling strength")
    parser.add_argument("--alpha", type=str, default=None,
                        help="field amplitude modulus")
    parser.add_argument("--coupling", type=str, default=None,
                        choices=("jcm", "rabi"))
    parser.add_argument("--field", type=str, default=None,
                        choices=harness.FIELD_KINDS)
    parser.add_argument("--engine", type=str, default=None,
                        help="comma-separated engine list")
    parser.add_argument("--t-end", dest="t_end", type=str, default=None)
    parser.add_argument("--n-points", dest="n_points", type=str, default=None)
    parser.add_argument("--out", type=str, default=None,
                        help="output path (extension optional)")
    parser.add_argument("--omega0", type=str, default=None)
    parser.add_argument("--omega", type=str, default=None)
    parser.add_argument("--phi", type=str, default=None)
    parser.add_argument("--n", type=str, default=None,
                        help="Fock level for displaced_fock")
    parser.add_argument("--spin", type=str, default=None)
    parser.add_argument("--t-start", dest="t_start", type=str, default=None)
    parser.add_argument("--fock-dim", dest="fock_dim", type=str, default=None)
    parser.add_argument("--format", dest="fmt", type=str, default=None,
                        choices=("csv", "svg", "both"))


_OVERRIDE_KEYS = (
    ("lam", "lambda"), ("alpha", "alpha"), ("coupling", "coupling"),
    ("field", "field"), ("engine", "engines"), ("t_end", "t_end"),
    ("n_points", "n_points"), ("out", "out"), ("omega0", "omega0"),
    ("omega", "omega"), ("phi", "phi"), ("n", "n"), ("spin", "spin"),
    ("t_start", "t_start"), ("fock_dim", "fock_dim"), ("fmt", "format"))


def _apply_overrides(mapping, args):
    for attr, key in _OVERRIDE_KEYS:
        value = getattr(args, attr, None)
        if value is not None:
            mapping[key] = value
    return mapping


def _read_text(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise OSError(f"cannot read {path!r}: {exc}") from exc


def _write_outputs(config, series, args):
    out = args.out or config.out_path or "qcfd_output"
    fmt = args.fmt or config.out_format
    for path in harness.emit(series, fmt, out):
        print(f"wrote {path}")


def _cmd_simulate(args):
    mapping = harness.parse_config_text(_read_text(args.config))
    config = harness.build_scenario(_apply_overrides(mapping, args))
    series = harness.run_scenario(config)
    _write_outputs(config, series, args)
    return 0


def _cmd_figure(args):
    presets = harness.preset_scenarios()
    if args.name not in presets:
        raise ConfigError(
            f"unknown figure {args.name!r}; valid: {sorted(presets)}")
    config = presets[args.name]
    series = harness.run_scenario(config)
    if args.out is None:
        args.out = args.name
    if args.fmt is None:
        args.fmt = "both"
    _write_outputs(config, series, args)
    return 0


def _cmd_floquet(args):
    mapping = harness.parse_config_text(_read_text(args.config))
    params = harness.build_params(_apply_overrides(mapping, args))
    sol = floquet_solve(params)
    lines = ["quantity,index,value"]
    lines.append(f"q_plus,,{sol.q_plus:.17g}")
    lines.append(f"q_minus,,{sol.q_minus:.17g}")
    for k in sorted(sol.A):
        lines.append(f"A,{k},{sol.A[k]:.17g}")
    for l in sorted(sol.B):
        lines.append(f"B,{l},{sol.B[l]:.17g}")
    lines.append(f"lambda_eff,,{lambda_eff(sol, params.lam):.17g}")
    print("\n".join(lines))
    return 0


def _pick_series(series_list, engine, path):
    if engine is not None:
        for s in series_list:
            if s.engine == engine:
                return s
        raise ConfigError(f"{path!r} has no engine {engine!r}")
    if len(series_list) != 1:
        raise ConfigError(
            f"{path!r} holds {len(series_list)} series; pick one with "
            "--engine-a/--engine-b")
    return series_list[0]


def _cmd_compare(args):
    series_a = _pick_series(harness.parse_csv(_read_text(args.csv_a)),
                            args.engine_a, args.csv_a)
    series_b = _pick_series(harness.parse_csv(_read_text(args.csv_b)),
                            args.engine_b, args.csv_b)
    window = None
    if args.window is not None:
        try:
            lo, hi = (float(x) for x in args.window.split(":"))
        except ValueError:
            raise ConfigError(
                f"--window expects t0:t1, got {args.window!r}") from None
        window = (lo, hi)
    m = harness.compare(series_a, series_b, window=window)
    print("metric,value")
    print(f"sup_norm,{m.sup_norm:.17g}")
    print(f"rmse,{m.rmse:.17g}")
    print(f"dominant_freq_a,{m.dominant_freq_a:.17g}")
    print(f"dominant_freq_b,{m.dominant_freq_b:.17g}")
    print(f"dominant_freq_diff,{m.dominant_freq_diff:.17g}")
    print(f"freq_bin,{m.freq_bin:.17g}")
    print(f"n_samples,{m.n_samples}")
    return 0


def build_parser():
    parser = argparse.ArgumentParser(
        prog="qcfd",
        description="Quantum-corrected Floquet dynamics for driven spins")
    sub = parser.add_subparsers(dest="command", required=True)

    p_sim = sub.add_parser("simulate", help="run a scenario config file")
    p_sim.add_argument("config")
    _add_override_flags(p_sim)
    p_sim.set_defaults(func=_cmd_simulate)

    p_fig = sub.add_parser("figure", help="run a shipped figure preset")
    p_fig.add_argument("name")
    p_fig.add_argument("--out", type=str, default=None)
    p_fig.add_argument("--format", dest="fmt", type=str, default=None,
                       choices=("csv", "svg", "both"))
    p_fig.set_defaults(func=_cmd_figure)

    p_flo = sub.add_parser("floquet",
                           help="print mode constants for a config")
    p_flo.add_argument("config")
    _add_override_flags(p_flo)
    p_flo.set_defaults(func=_cmd_floquet)

    p_cmp = sub.add_parser("compare", help="difference metrics for two CSVs")
    p_cmp.add_argument("csv_a")
    p_cmp.add_argument("csv_b")
    p_cmp.add_argument("--window", type=str, default=None,
                       help="time window t0:t1")
    p_cmp.add_argument("--engine-a", dest="engine_a", type=str, default=None)
    p_cmp.add_argument("--engine-b", dest="engine_b", type=str, default=None)
    p_cmp.set_defaults(func=_cmd_compare)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ConfigError as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return 2
    except NumericError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except QcfdError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"i/o error: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
