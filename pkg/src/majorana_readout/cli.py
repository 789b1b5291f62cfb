"""Command-line front end.

Subcommands::

    spectrum   energy levels versus offset charge            -> CSV
    chi        dispersive shift over a parameter sweep         -> CSV
    readout    SNR, fidelity and time to a target fidelity     -> JSON
    reproduce  data, plots and manifest for one figure preset  -> directory

Exit codes: 0 success, 2 configuration error, 3 numerical failure.
"""

import argparse
import os
import sys
import warnings

from .box import mb_spectrum_vs_ng
from .errors import DomainError, NumericError
from .output import csv_text, json_text
from .readout import (
    LongitudinalBudgetParams,
    dispersive_params_from_budget,
    drive_from_photon_budget,
    fidelity_from_snr,
    snr,
    time_to_fidelity,
)
from .scenario import (
    ConfigError,
    apply_override,
    basis_of,
    chi_numeric,
    chi_row,
    default_config,
    delta_over_g,
    load_config,
    parse_sweep,
    qubit_params,
)
from .transmon import mt_spectrum_vs_ng
from .units import TWO_PI, to_mhz

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3

DEFAULT_NG_SWEEP = "qubit.n_g=-1:1:101"


def _map(fn, items, jobs):
    if jobs > 1:
        from concurrent.futures import ThreadPoolExecutor

        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, items))  # map keeps grid order
    return [fn(x) for x in items]


def spectrum_rows(cfg, ng_values):
    """(header, rows) for the level table of ``cfg`` at each offset charge."""
    p = qubit_params(cfg)
    if cfg["qubit_type"] == "majorana-box":
        lo, hi = cfg["numerics"]["n_window"]
        raw = mb_spectrum_vs_ng(p, ng_values, range(lo, hi + 1))
        rows = [[ng, f"n{n}{lb}", lvl, f] for ng, n, lb, lvl, f in raw]
    else:
        raw = mt_spectrum_vs_ng(p, ng_values, cfg["numerics"]["k_levels"], basis_of(cfg))
        rows = [[ng, "+" if s > 0 else "-", lvl, f] for ng, s, lvl, f in raw]
    return ["n_g", "sector_label", "level_index", "freq_GHz"], rows


def _emit(text, out, name):
    if out is None:
        sys.stdout.write(text)
        return
    os.makedirs(out, exist_ok=True)
    with open(os.path.join(out, name), "w", newline="") as fh:
        fh.write(text)


def _config(args):
    return load_config(args.config) if args.config else default_config(args.qubit_type)


def cmd_spectrum(args):
    cfg = _config(args)
    key, values = parse_sweep(args.sweep or DEFAULT_NG_SWEEP)
    if key != "qubit.n_g":
        raise ConfigError("--sweep", "spectrum sweeps the offset charge: use qubit.n_g=start:stop:count")
    header, rows = spectrum_rows(cfg, values)
    _emit(csv_text(header, rows), args.out, "spectrum.csv")
    return EXIT_OK


def cmd_chi(args):
    cfg = _config(args)
    if args.sweep:
        key, values = parse_sweep(args.sweep)
        cfgs = [apply_override(cfg, key, v) for v in values]  # validate the whole grid up front
    else:
        values, cfgs = [None], [cfg]
    method = args.method
    results = _map(lambda c: chi_row(c, method), cfgs, args.jobs)
    header = ["sweep_value"]
    if method in ("numeric", "both"):
        header.append("chi_numeric_MHz")
    if method in ("analytic", "both"):
        header.append("chi_analytic_MHz")
    header += ["resonance_margin", "flag"]
    rows, failed = [], 0
    for v, (num, ana, margin, flag) in zip(values, results):
        row = [v]
        if method in ("numeric", "both"):
            row.append(num)
        if method in ("analytic", "both"):
            row.append(ana)
        rows.append(row + [margin, flag])
        if flag:
            print(f"warning: sweep value {v}: {flag}", file=sys.stderr)
        if num is None and ana is None:
            failed += 1
    _emit(csv_text(header, rows), args.out, "chi.csv")
    if failed == len(rows):
        print("error: every sweep point hit a resonance", file=sys.stderr)
        return EXIT_NUMERIC
    return EXIT_OK


def readout_report(cfg, scheme, target_F):
    """Dict with the resolved config and the readout budget for ``scheme``."""
    chi, _ = chi_numeric(cfg)
    ro = cfg["readout"]
    kappa = None if ro["kappa_GHz"] is None else TWO_PI * ro["kappa_GHz"]
    dg = delta_over_g(cfg)
    disp = dispersive_params_from_budget(chi, dg, ro["nbar_ratio"], kappa)
    _, n_crit, _ = drive_from_photon_budget(chi, disp.kappa, dg, ro["nbar_ratio"])
    if scheme == "dispersive":
        p = disp
    else:
        p = LongitudinalBudgetParams(gz_tilde=TWO_PI * ro["gz_tilde_GHz"], kappa=disp.kappa)
    taus = list(ro["tau_grid_us"])
    snrs = [snr(p, t) for t in taus]
    return {
        "config": cfg,
        "scheme": scheme,
        "target_fidelity": target_F,
        "chi_MHz": to_mhz(chi),
        "kappa_MHz": to_mhz(p.kappa),
        "nbar": p.nbar,
        "n_crit": n_crit,
        "tau_us": taus,
        "snr_at_tau": snrs,
        "fidelity_at_tau": [float(fidelity_from_snr(s)) for s in snrs],
        "tau_to_target_us": time_to_fidelity(p, target_F),
    }


def cmd_readout(args):
    cfg = _config(args)
    if args.target_fidelity is not None:
        cfg = apply_override(cfg, "readout.target_fidelity", args.target_fidelity)
    report = readout_report(cfg, args.scheme, cfg["readout"]["target_fidelity"])
    _emit(json_text(report), args.out, f"readout_{args.scheme}.json")
    return EXIT_OK


def cmd_reproduce(args):
    from .presets import FIGURES, reproduce

    figures = FIGURES if args.figure == "all" else [int(args.figure)]
    code = EXIT_OK
    for fig in figures:
        _, ok = reproduce(fig, args.out, jobs=args.jobs)
        print(f"figure {fig}: {'ok' if ok else 'FAILED'} -> {os.path.join(args.out, f'fig{fig}')}")
        if not ok:
            code = EXIT_NUMERIC
    return code


def build_parser():
    ap = argparse.ArgumentParser(prog="majorana-readout", description=__doc__.split("\n")[0])
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, sweep=True):
        p.add_argument("--config", help="JSON scenario file; defaults are used when omitted")
        p.add_argument(
            "--qubit-type",
            default="majorana-transmon",
            choices=("transmon", "majorana-transmon", "majorana-box"),
            help="qubit type for the built-in defaults (ignored with --config)",
        )
        if sweep:
            p.add_argument("--sweep", help="key=start:stop:count or key=v1,v2,...")
        p.add_argument("--out", help="output directory (stdout when omitted)")
        p.add_argument("--jobs", type=int, default=1, help="worker threads for sweep points")

    p = sub.add_parser("spectrum", help="levels versus offset charge (CSV)")
    common(p)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("chi", help="dispersive shift over a sweep (CSV)")
    common(p)
    p.add_argument("--method", choices=("numeric", "analytic", "both"), default="both")
    p.set_defaults(func=cmd_chi)

    p = sub.add_parser("readout", help="readout budget (JSON)")
    common(p, sweep=False)
    p.add_argument("--scheme", choices=("dispersive", "longitudinal"), default="dispersive")
    p.add_argument("--target-fidelity", type=float)
    p.set_defaults(func=cmd_readout)

    p = sub.add_parser("reproduce", help="regenerate a figure's data, plots and manifest")
    p.add_argument("--figure", required=True, choices=["2", "3", "4", "5", "6", "7", "all"])
    p.add_argument("--out", default="figures")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_reproduce)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    if getattr(args, "jobs", 1) < 1:
        print("error: --jobs must be >= 1", file=sys.stderr)
        return EXIT_CONFIG
    with warnings.catch_warnings():
        warnings.simplefilter("always")
        warnings.showwarning = _show_warning
        try:
            return args.func(args)
        except ConfigError as exc:
            print(f"config error: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        except DomainError as exc:
            print(f"invalid input: {exc}", file=sys.stderr)
            return EXIT_CONFIG
        except NumericError as exc:
            print(f"numerical failure: {exc}", file=sys.stderr)
            return EXIT_NUMERIC


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"warning: {message}", file=sys.stderr)
