"""Command-line interface: ``jcq-decoherence <subcommand> [flags]``."""

from __future__ import annotations

import argparse
import json
import os
import sys

from . import units
from .dynamics import DynamicsParams, decoherence_from_b2, norm_closed_form
from .kernel import IntegrationError, KernelRequest, kernel
from .scenario import (
    FIGURES,
    ConfigError,
    ScenarioConfig,
    config_from_mapping,
    critical_alpha_report,
    figure_config,
    load_config,
    run_figure,
    run_grid,
    write_curves,
    write_figure,
    write_manifest,
)
from .spectra import Temperature

EXIT_OK, EXIT_CONFIG, EXIT_INTEGRATION, EXIT_IO = 0, 2, 3, 4

# flag dest -> configuration key
_FLAG_KEYS = {
    "ej_uev": "e_j_ueV",
    "temp_k": "temperatures_K",
    "eta": "eta",
    "alpha_f": "alpha_f_values",
    "ohmic_band_ghz": "ohmic_band_GHz",
    "f_band_hz": "oneoverf_band_Hz",
    "t_grid": "t_grid",
    "cutoff_sign": "cutoff_sign",
    "noise": "noise",
    "e_cut_ghz": "e_cut_GHz",
    "kappa_uev2": "kappa_ueV2",
    "band_interpretation": "band_interpretation",
    "rel_tol": "rel_tol",
}


def _common_flags() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--config", help="flat key = value configuration file")
    p.add_argument("--ej-uev", help="Josephson energy in ueV")
    p.add_argument("--temp-k", help="temperature(s) in K, comma separated")
    p.add_argument("--eta", help="dimensionless Ohmic coupling")
    p.add_argument("--alpha-f", help="1/f amplitude(s), comma separated")
    p.add_argument("--ohmic-band-ghz", metavar="LO:HI")
    p.add_argument("--f-band-hz", metavar="LO:HI")
    p.add_argument("--t-grid", metavar="START:STOP:POINTS")
    p.add_argument("--e-cut-ghz", help="Ohmic cutoff frequency in GHz")
    p.add_argument("--kappa-uev2", help="1/f prefactor in ueV^2 (default: from capacitances)")
    p.add_argument("--noise", choices=["ohmic", "oneoverf", "composite"])
    p.add_argument("--cutoff-sign", choices=["neg", "pos"], help="sign of the Ohmic cutoff exponent")
    p.add_argument("--band-interpretation", choices=["frequency", "angular"])
    p.add_argument("--rel-tol", help="quadrature relative tolerance")
    p.add_argument("--out", default="out", help="output directory (default: out)")
    p.add_argument("--threshold", type=float, default=1e-4, help="decoherence threshold for critical-alpha")
    return p


def build_parser() -> argparse.ArgumentParser:
    common = _common_flags()
    parser = argparse.ArgumentParser(
        prog="jcq-decoherence", description="Short-time decoherence of a Josephson charge qubit."
    )
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("bsq", parents=[common], help="kernel B^2(t) and C(t) at one time")
    p.add_argument("--t", type=float, required=True, help="dimensionless time")
    p = sub.add_parser("decohere", parents=[common], help="decoherence D(t) at one time")
    p.add_argument("--t", type=float, required=True, help="dimensionless time")
    sub.add_parser("sweep", parents=[common], help="all curves of the configuration on its time grid")
    p = sub.add_parser("figures", parents=[common], help="reproduce a figure's curve family")
    p.add_argument("figure", choices=sorted(FIGURES))
    sub.add_parser("critical-alpha", parents=[common], help="1/f amplitude at which D(1/E_J) hits the threshold")
    return parser


def _overrides(args) -> dict:
    raw = load_config(args.config) if args.config else {}
    for dest, key in _FLAG_KEYS.items():
        value = getattr(args, dest, None)
        if value is not None:
            raw[key] = value
    return raw


def _bsq(cfg: ScenarioConfig, t: float) -> dict:
    out = {"t": t, "tau_ps": float(units.t_to_tau_ps(t)), "T_K": cfg.temperatures_K[0], "alpha_f": cfg.alpha_f_values[0]}
    T = Temperature(cfg.temperatures_K[0])
    total = 0.0
    sources = {"ohmic": cfg.ohmic_model, "oneoverf": lambda: cfg.oneoverf_model(cfg.alpha_f_values[0])}
    for name, make in sources.items():
        if cfg.noise in (name, "composite"):
            res = kernel(KernelRequest(make(), T, t, cfg.quadrature))
            out[f"b2_{name}"] = res.b_squared
            out[f"c_{name}"] = res.c_phase
            out[f"est_rel_error_{name}"] = res.est_rel_error
            total += res.b_squared
        else:
            out[f"b2_{name}"] = 0.0
    out["b2_total"] = total
    return out


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        raw = _overrides(args)
        cfg = figure_config(args.figure, raw) if args.command == "figures" else config_from_mapping(raw)

        if args.command == "bsq":
            print(json.dumps(_bsq(cfg, args.t), indent=2))
        elif args.command == "decohere":
            out = _bsq(cfg, args.t)
            out["D"] = decoherence_from_b2(out["b2_total"])
            params = DynamicsParams(cfg.e_j_ueV, out["b2_total"])
            out["norm_initial_state"] = norm_closed_form(cfg.initial_state, args.t, params)
            print(json.dumps(out, indent=2))
        elif args.command == "sweep":
            print(write_curves(run_grid(cfg), args.out, "sweep", cfg))
        elif args.command == "figures":
            fig = run_figure(args.figure, raw)
            print(write_figure(fig, args.out))
        elif args.command == "critical-alpha":
            report = critical_alpha_report(cfg, args.threshold)
            os.makedirs(args.out, exist_ok=True)
            payload = {"config": cfg.to_dict(), "critical_alpha": report}
            path = write_manifest(os.path.join(args.out, "critical_alpha_manifest.json"), payload)
            print(json.dumps(report, indent=2))
            print(path)
    except (ConfigError, ValueError) as exc:
        print(f"configuration error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except IntegrationError as exc:
        print(f"integration error: {exc}", file=sys.stderr)
        return EXIT_INTEGRATION
    except OSError as exc:
        print(f"I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
