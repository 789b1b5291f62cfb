"""Figure presets: parameter sets and sweeps that regenerate each figure's data.

Every panel is described by the configs it evaluates and its sweep; the same
description is written to the manifest, so the manifest lists every parameter
that entered a computation.
"""

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from . import _kernels
from .box import MBParams, box_couplings
from .errors import NumericError, ResonantPairError
from .output import csv_text, json_text, svg_line_plot
from .readout import (
    LongitudinalBudgetParams,
    dispersive_params_from_budget,
    longitudinal_modulation,
    snr,
    solve_modulation_amplitude,
    time_to_fidelity,
)
from .scenario import (
    apply_override,
    chi_numeric,
    chi_row,
    default_config,
    delta_over_g,
    qubit_params,
)
from .units import TWO_PI, to_mhz

FIGURES = (2, 3, 4, 5, 6, 7)

TOLERANCES = {
    "eigen_residual_rtol": 1e-10,
    "hermiticity_rtol": 1e-12,
    "resonance_guard": 1e-3,
    "cutoff_convergence_rtol": 1e-8,
    "fidelity_atol": 1e-8,
    "fourier_points": 256,
}


@dataclass
class Panel:
    name: str
    header: list
    rows: list
    plot: tuple  # (series, title, xlabel, ylabel)
    configs: dict = field(default_factory=dict)
    sweep: dict = field(default_factory=dict)
    derived: dict = field(default_factory=dict)
    failed: bool = False


def _linspace(a, b, n):
    return [float(x) for x in np.linspace(a, b, n)]


def _map(fn, items, jobs):
    if jobs and jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


def _cfg(qtype, **qubit):
    c = default_config(qtype)
    c["qubit"].update(qubit)
    return c


def _series(header, rows, xcol, ycols, labels=None):
    labels = labels or ycols
    xi = header.index(xcol)
    out = []
    for lab, col in zip(labels, ycols):
        yi = header.index(col)
        out.append((lab, [r[xi] for r in rows], [r[yi] for r in rows]))
    return out


def chi_sweep_table(configs, key, values, method="numeric", jobs=1):
    """Wide table: one row per sweep value, chi columns per labelled config."""
    header = [key.split(".")[-1]]
    for label in configs:
        if method in ("numeric", "both"):
            header.append(f"{label}_numeric_MHz")
        if method in ("analytic", "both"):
            header.append(f"{label}_analytic_MHz")

    def one(v):
        row = [v]
        for cfg in configs.values():
            num, ana, _, _ = chi_row(apply_override(cfg, key, v), method)
            if method in ("numeric", "both"):
                row.append(num)
            if method in ("analytic", "both"):
                row.append(ana)
        return row

    return header, _map(one, values, jobs)


def _spectrum_rows(cfg, ng_values):
    from .cli import spectrum_rows

    return spectrum_rows(cfg, ng_values)


# --- figures ------------------------------------------------------------------


def figure2(jobs=1):
    ng = _linspace(-1.0, 1.0, 101)
    panels = []
    for name, ratio in (("a", 0.0), ("b", 0.1)):
        cfg = apply_override(_cfg("majorana-transmon"), "qubit.EM_ratio", ratio)
        header, rows = _spectrum_rows(cfg, ng)
        series = []
        for sector in ("+", "-"):
            for lvl in range(cfg["numerics"]["k_levels"]):
                pts = [(r[0], r[3]) for r in rows if r[1] == sector and r[2] == lvl]
                series.append((f"{sector}{lvl}", [p[0] for p in pts], [p[1] for p in pts]))
        panels.append(
            Panel(
                f"fig2{name}",
                header,
                rows,
                (series, f"Majorana transmon spectrum, 2E_M/w_t={ratio}", "n_g", "frequency (GHz)"),
                configs={"mt": cfg},
                sweep={"qubit.n_g": ng},
            )
        )
    return panels


def figure3(jobs=1):
    mt = _cfg("majorana-transmon")
    tr = _cfg("transmon")
    panels = []

    dg = _linspace(-20.0, 20.0, 81)
    confs = {"t": tr}
    for r in (0.1, 0.2, 0.4):
        confs[f"mt_{r}"] = apply_override(mt, "qubit.EM_ratio", r)
    header, rows = chi_sweep_table(confs, "resonator.delta_over_g", dg, "numeric", jobs)
    panels.append(
        Panel(
            "fig3a", header, rows,
            (_series(header, rows, header[0], header[1:]), "chi vs detuning", "Delta/g_t", "chi/2pi (MHz)"),
            configs=confs, sweep={"resonator.delta_over_g": dg},
        )
    )

    dtg = _linspace(-1.0, 2.5, 141)
    header, rows = chi_sweep_table({"t": tr}, "resonator.delta_over_g", dtg, "both", jobs)
    panels.append(
        Panel(
            "fig3b", header, rows,
            (_series(header, rows, header[0], header[1:]), "transmon straddling regime", "Delta_t/g_t", "chi_t/2pi (MHz)"),
            configs={"t": tr}, sweep={"resonator.delta_over_g": dtg},
        )
    )

    chi_t = to_mhz(chi_numeric(tr)[0])
    ratios = _linspace(0.05, 0.5, 10)
    header, rows = chi_sweep_table({"mt": mt}, "qubit.EM_ratio", ratios, "both", jobs)
    from .scenario import chi_analytic

    chi_t_an = to_mhz(chi_analytic(tr))
    header = header + ["ratio_numeric", "ratio_analytic"]
    rows = [r + [abs(r[1] / chi_t), abs(r[2] / chi_t_an)] for r in rows]
    panels.append(
        Panel(
            "fig3c", header, rows,
            (_series(header, rows, "EM_ratio", ["ratio_numeric", "ratio_analytic"]), "|chi_mt/chi_t|", "2E_M/w_t", "ratio"),
            configs={"mt": mt, "t": tr}, sweep={"qubit.EM_ratio": ratios},
            derived={"chi_t_numeric_MHz": chi_t, "chi_t_analytic_MHz": chi_t_an},
        )
    )

    mt02 = apply_override(mt, "qubit.EM_ratio", 0.2)
    phis = _linspace(0.0, 2.0, 41)
    header, rows = chi_sweep_table({"mt": mt02}, "qubit.phi_x_over_pi", phis, "both", jobs)
    header = header + ["ratio_numeric", "ratio_analytic"]
    rows = [r + [r[1] / abs(chi_t), r[2] / abs(chi_t_an)] for r in rows]
    panels.append(
        Panel(
            "fig3d", header, rows,
            (_series(header, rows, "phi_x_over_pi", ["ratio_numeric", "ratio_analytic"]), "chi_mt/|chi_t| vs flux", "phi_x/pi", "ratio"),
            configs={"mt": mt02, "t": tr}, sweep={"qubit.phi_x_over_pi": phis},
            derived={"chi_t_numeric_MHz": chi_t, "chi_t_analytic_MHz": chi_t_an},
        )
    )
    return panels


def figure4(jobs=1):
    ng = _linspace(-1.0, 1.0, 101)
    panels = []
    for name, tod in (("a", 0.0), ("b", 0.2)):
        cfg = _cfg("majorana-box", phi_x=math.pi / 2)
        cfg = apply_override(cfg, "qubit.t_over_delta", tod)
        header, rows = _spectrum_rows(cfg, ng)
        series = []
        labels = sorted({r[1] for r in rows})
        for lab in labels:
            for lvl in range(4):
                pts = [(r[0], r[3]) for r in rows if r[1] == lab and r[2] == lvl]
                if pts:
                    series.append((f"{lab}:{lvl}", [p[0] for p in pts], [p[1] for p in pts]))
        panels.append(
            Panel(
                f"fig4{name}", header, rows,
                (series, f"Majorana box spectrum, t/delta={tod}", "n_g", "frequency (GHz)"),
                configs={"mb": cfg}, sweep={"qubit.n_g": ng},
            )
        )
    return panels


def figure5(jobs=1):
    mb = _cfg("majorana-box")
    panels = []
    dg = _linspace(-20.0, 20.0, 81)
    confs = {f"mb_{t}": apply_override(mb, "qubit.t_over_delta", t) for t in (0.05, 0.2, 0.5)}
    header, rows = chi_sweep_table(confs, "resonator.delta_over_g", dg, "both", jobs)
    panels.append(
        Panel(
            "fig5a", header, rows,
            (_series(header, rows, header[0], header[1:]), "chi_mb vs detuning", "Delta/|g_+|", "chi_mb/2pi (MHz)"),
            configs=confs, sweep={"resonator.delta_over_g": dg},
        )
    )
    tods = _linspace(0.05, 0.5, 46)
    header, rows = chi_sweep_table({"mb": mb}, "qubit.t_over_delta", tods, "both", jobs)
    panels.append(
        Panel(
            "fig5b", header, rows,
            (_series(header, rows, header[0], header[1:]), "chi_mb vs t/delta", "t/delta", "chi_mb/2pi (MHz)"),
            configs={"mb": mb}, sweep={"qubit.t_over_delta": tods},
        )
    )
    mb02 = apply_override(mb, "qubit.t_over_delta", 0.2)
    phis = _linspace(0.0, 2.0, 41)
    header, rows = chi_sweep_table({"mb": mb02}, "qubit.phi_x_over_pi", phis, "both", jobs)
    panels.append(
        Panel(
            "fig5c", header, rows,
            (_series(header, rows, header[0], header[1:]), "chi_mb vs flux", "phi_x/pi", "chi_mb/2pi (MHz)"),
            configs={"mb": mb02}, sweep={"qubit.phi_x_over_pi": phis},
        )
    )
    return panels


def _dispersive_readout(cfg):
    chi, _ = chi_numeric(cfg)
    ro = cfg["readout"]
    kappa = None if ro["kappa_GHz"] is None else TWO_PI * ro["kappa_GHz"]
    return dispersive_params_from_budget(chi, delta_over_g(cfg), ro["nbar_ratio"], kappa)


def figure6(jobs=1):
    from .scenario import apply_override as ov

    confs = {"t": _cfg("transmon"), "mt": _cfg("majorana-transmon"), "mb": _cfg("majorana-box")}
    wq = _linspace(0.1, 2.0, 20)
    panels = []

    def at_wq(label, v):
        return confs[label] if label == "t" else ov(confs[label], "qubit.omega_q", v)

    def row6a(v):
        row = [v]
        for lab in confs:
            row.append(to_mhz(chi_numeric(at_wq(lab, v))[0]))
        return row

    rows = _map(row6a, wq, jobs)
    header = ["omega_q"] + [f"{lab}_numeric_MHz" for lab in confs]
    panels.append(
        Panel(
            "fig6a", header, rows,
            (_series(header, rows, "omega_q", header[1:]), "dispersive shifts vs qubit frequency", "w_q/2pi (GHz)", "chi/2pi (MHz)"),
            configs=confs, sweep={"qubit.omega_q": wq},
        )
    )

    at1 = {lab: at_wq(lab, 1.0) for lab in confs}
    budgets = {lab: _dispersive_readout(c) for lab, c in at1.items()}
    gz = TWO_PI * at1["mb"]["readout"]["gz_tilde_GHz"]
    lon = LongitudinalBudgetParams(gz_tilde=gz, kappa=budgets["mb"].kappa)
    taus = [float(x) for x in np.geomspace(0.01, 3.0, 60)]
    schemes = {**{f"{lab}_dispersive": b for lab, b in budgets.items()}, "mb_longitudinal": lon}
    rows = []
    for tau in taus:
        rows.append([tau] + [float(_kernels.erfc(snr(b, tau) / 2.0)) for b in schemes.values()])
    header = ["tau_us"] + [f"infidelity_{k}" for k in schemes]
    log_rows = [[r[0]] + [math.log10(x) if x > 0 else None for x in r[1:]] for r in rows]
    panels.append(
        Panel(
            "fig6b", header, rows,
            (_series(header, log_rows, "tau_us", header[1:]), "infidelity vs readout time (log10)", "tau (us)", "log10(1-F)"),
            configs=at1, sweep={"tau_us": taus},
            derived={
                "chi_MHz": {lab: to_mhz(b.chi) for lab, b in budgets.items()},
                "kappa_MHz": {lab: to_mhz(b.kappa) for lab, b in budgets.items()},
                "nbar_dispersive": {lab: b.nbar for lab, b in budgets.items()},
                "nbar_longitudinal": lon.nbar,
                "tau_to_target_us": {
                    k: time_to_fidelity(b, at1["mb"]["readout"]["target_fidelity"]) for k, b in schemes.items()
                },
            },
        )
    )

    def row6c(v):
        row = [v]
        for lab in confs:
            c = at_wq(lab, v)
            row.append(time_to_fidelity(_dispersive_readout(c), c["readout"]["target_fidelity"]))
        return row

    rows = _map(row6c, wq, jobs)
    header = ["omega_q"] + [f"tau_{lab}_us" for lab in confs]
    panels.append(
        Panel(
            "fig6c", header, rows,
            (_series(header, rows, "omega_q", header[1:]), "time to 99.99% fidelity", "w_q/2pi (GHz)", "tau (us)"),
            configs=confs, sweep={"qubit.omega_q": wq},
        )
    )
    return panels


def figure7(jobs=1):
    base = _cfg("majorana-box")
    p0 = qubit_params(base)
    lam = TWO_PI * base["resonator"]["lambda_GHz"]
    d = p0.E_tot + p0.eps_dot
    target = TWO_PI * base["readout"]["gz_tilde_GHz"]
    panels = []

    def gz_static(p):
        return to_mhz(0.5 * box_couplings(p, 0, lam).g_m)

    tods = _linspace(0.0, 1.0, 41)
    phis = _linspace(0.0, 2.0, 41)
    rows = []
    for t in tods:
        for ph in phis:
            rows.append([t, ph, gz_static(replace(p0, t_L=t * d, t_R=t * d, phi_x=ph * math.pi))])
    header = ["t_over_delta", "phi_x_over_pi", "g_z_MHz"]
    cut0 = [r for r in rows if r[1] == 0.0]
    panels.append(
        Panel(
            "fig7map", header, rows,
            ([("phi_x=0", [r[0] for r in cut0], [r[2] for r in cut0])], "g_z = g_m/2", "t/delta", "g_z/2pi (MHz)"),
            configs={"mb": base}, sweep={"t_over_delta": tods, "phi_x_over_pi": phis},
        )
    )

    # (a) tunnelling modulation at phi_x = 0
    tbars = _linspace(0.02, 1.0, 50)

    def amp_t(tb):
        p = replace(p0, t_L=tb * d, t_R=tb * d, phi_x=0.0)
        a = solve_modulation_amplitude(p, lam, "tunneling", target, tb * d)
        g01 = longitudinal_modulation(p, lam, "tunneling", min(0.1 * d, tb * d))[0]
        return [tb, gz_static(p), None if a is None else a / d, to_mhz(g01)]

    rows = _map(amp_t, tbars, jobs)
    header = ["t_bar_over_delta", "g_z_MHz", "t_tilde_over_delta_for_target", "g_z_tilde_MHz_at_0.1"]
    reach = [r for r in rows if r[2] is not None]
    best = min(reach, key=lambda r: r[2]) if reach else None
    panels.append(
        Panel(
            "fig7a", header, rows,
            (_series(header, rows, header[0], [header[1], header[3]]), "tunnelling modulation", "t_bar/delta", "MHz"),
            configs={"mb": base}, sweep={"t_bar_over_delta": tbars},
            derived={
                "target_gz_MHz": to_mhz(target),
                "best_operating_point_t_over_delta": None if best is None else best[0],
                "min_t_tilde_over_delta": None if best is None else best[2],
                "max_gz_tilde_MHz_at_0.1": max(abs(r[3]) for r in rows),
            },
        )
    )

    # (b) flux modulation at t/delta = 0.5
    pb = replace(p0, t_L=0.5 * d, t_R=0.5 * d)
    phibars = _linspace(0.0, 2.0, 41)

    def amp_phi(ph):
        p = replace(pb, phi_x=ph * math.pi)
        a = solve_modulation_amplitude(p, lam, "flux", target, math.pi)
        g10 = longitudinal_modulation(p, lam, "flux", math.pi / 10)[0]
        return [ph, gz_static(p), None if a is None else a / math.pi, to_mhz(g10)]

    rows = _map(amp_phi, phibars, jobs)
    header = ["phi_bar_over_pi", "g_z_MHz", "phi_tilde_over_pi_for_target", "g_z_tilde_MHz_at_pi_over_10"]
    reach = [r for r in rows if r[2] is not None]
    best = min(reach, key=lambda r: r[2]) if reach else None
    panels.append(
        Panel(
            "fig7b", header, rows,
            (_series(header, rows, header[0], [header[1], header[3]]), "flux modulation", "phi_bar/pi", "MHz"),
            configs={"mb": apply_override(base, "qubit.t_over_delta", 0.5)}, sweep={"phi_bar_over_pi": phibars},
            derived={
                "target_gz_MHz": to_mhz(target),
                "best_operating_point_phi_over_pi": None if best is None else best[0],
                "min_phi_tilde_over_pi": None if best is None else best[2],
                "max_gz_tilde_MHz_at_pi_over_10": max(abs(r[3]) for r in rows),
            },
        )
    )
    return panels


_BUILDERS = {2: figure2, 3: figure3, 4: figure4, 5: figure5, 6: figure6, 7: figure7}


def reproduce(figure, out_dir, jobs=1):
    """Write CSV + SVG per panel and a manifest into ``out_dir/figN``.

    Returns (manifest dict, ok flag).
    """
    if figure not in _BUILDERS:
        raise ValueError(f"no preset for figure {figure}; choose from {FIGURES}")
    target = os.path.join(out_dir, f"fig{figure}")
    os.makedirs(target, exist_ok=True)
    manifest = {"figure": figure, "kernel_backend": _kernels.backend_name(), "tolerances": TOLERANCES, "panels": []}
    ok = True
    try:
        panels = _BUILDERS[figure](jobs)
    except (NumericError, ResonantPairError) as exc:
        manifest["error"] = str(exc)
        panels, ok = [], False
    for p in panels:
        csv_name, svg_name = f"{p.name}.csv", f"{p.name}.svg"
        with open(os.path.join(target, csv_name), "w", newline="") as fh:
            fh.write(csv_text(p.header, p.rows))
        series, title, xl, yl = p.plot
        with open(os.path.join(target, svg_name), "w", newline="") as fh:
            fh.write(svg_line_plot(series, title, xl, yl))
        manifest["panels"].append(
            {
                "name": p.name,
                "files": [csv_name, svg_name],
                "columns": p.header,
                "configs": p.configs,
                "sweep": p.sweep,
                "derived": p.derived,
            }
        )
    with open(os.path.join(target, "manifest.json"), "w", newline="") as fh:
        fh.write(json_text(manifest))
    return manifest, ok
