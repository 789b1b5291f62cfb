"""End-to-end acceptance checks.

Each test times one criterion against its runtime budget and records a single
PASS/FAIL line, printed in the terminal summary.
"""

import math
import time
from dataclasses import replace

import numpy as np
import pytest

from majorana_readout.box import (
    MBParams,
    block_hamiltonian,
    block_solution,
    box_couplings,
    chi_mb_analytic,
    chi_mb_numeric,
    omega_r_box,
)
from majorana_readout.engine import dispersive_shifts, two_level_chi
from majorana_readout.errors import ResonantPairError
from majorana_readout.operators import ChargeBasis, hermitian_eig
from majorana_readout.presets import _dispersive_readout
from majorana_readout.readout import (
    DispersiveBudgetParams,
    LongitudinalBudgetParams,
    longitudinal_modulation,
    solve_modulation_amplitude,
    time_to_fidelity,
)
from majorana_readout.scenario import apply_override, chi_numeric, default_config
from majorana_readout.transmon import (
    IndirectMTParams,
    MTParams,
    build_mt_hamiltonian,
    chi_mt_indirect,
    chi_mt_numeric,
    chi_t_numeric,
    indirect_sector_eigs,
    kerr_approximation,
    match_indirect_tunneling,
    mt_number_operator,
    mt_sector_eigs,
    omega_r_mt,
    omega_r_transmon,
)
from majorana_readout.units import TWO_PI, to_mhz

EC, EJ = 0.25, 12.5
LAM = TWO_PI * 0.1
OMEGA_T = kerr_approximation(MTParams(EC, EJ)).omega_t


def mt(ratio, **kw):
    return MTParams(EC, EJ, E_M=0.5 * ratio * OMEGA_T, **kw)


def run(report, tag, limit_s, check):
    """Time ``check() -> (ok, detail)``, record the line and assert both parts."""
    t0 = time.perf_counter()
    ok, detail = check()
    dt = time.perf_counter() - t0
    fast = dt < limit_s
    status = "PASS" if ok and fast else "FAIL"
    line = f"{tag} {status}: {detail}; runtime {dt:.2f} s (limit {limit_s} s)"
    report(line)
    assert ok, line
    assert fast, line


def test_a01_transmon_frequency(acceptance_report):
    def check():
        e = mt_sector_eigs(MTParams(EC, EJ), ChargeBasis(30))[1].values / TWO_PI
        w01 = e[1] - e[0]
        rel = abs(w01 - 4.75) / 4.75
        return rel <= 0.02, f"omega_01/2pi = {w01:.4f} GHz vs 4.75 closed form ({rel:.2%}, tol 2%)"

    run(acceptance_report, "A1", 1.0, check)


def test_a02_parity_degeneracy_and_selection_rule(acceptance_report):
    def check():
        b = ChargeBasis(20)
        worst_split = 0.0
        for ng in np.linspace(-1, 1, 41):
            e = mt_sector_eigs(MTParams(EC, EJ, n_g=float(ng)), b)
            worst_split = max(worst_split, np.max(np.abs(e[1].values - e[-1].values)) / TWO_PI)
        D = b.pair_dimension
        N = np.kron(np.eye(2), mt_number_operator(b))
        worst_cross = 0.0
        for ratio, ng, phi in ((0.1, 0.0, 0.0), (0.2, 0.23, 0.7), (0.5, 0.5, 2.0), (0.05, -0.8, math.pi)):
            p = mt(ratio, n_g=ng, phi_x=phi)
            H = np.zeros((2 * D, 2 * D), dtype=complex)
            H[:D, :D] = build_mt_hamiltonian(p, 1, b)
            H[D:, D:] = build_mt_hamiltonian(p, -1, b)
            eig = hermitian_eig(H)
            even = np.sum(np.abs(eig.vectors[:D]) ** 2, axis=0) > 0.5
            Ne = eig.vectors.conj().T @ N @ eig.vectors
            worst_cross = max(worst_cross, np.max(np.abs(Ne[np.ix_(even, ~even)])))
        ok = worst_split < 1e-10 and worst_cross < 1e-10
        return ok, f"max E_M=0 parity split {worst_split:.1e} GHz, max cross-parity |N| {worst_cross:.1e} (tol 1e-10)"

    run(acceptance_report, "A2", 5.0, check)


def test_a03_straddling_sign_change(acceptance_report):
    def check():
        p = MTParams(EC, EJ)
        signs = []
        for d in np.linspace(0.0, EC, 202)[1:-1]:
            try:
                c = chi_t_numeric(p, LAM, TWO_PI * (OMEGA_T - d))
            except ResonantPairError:
                continue
            signs.append(np.sign(c))
        changes = int(np.sum(np.diff(signs) != 0))
        # structure: positive strictly between the numeric 0-1 and 1-2 poles, negative outside
        e = mt_sector_eigs(p, ChargeBasis(30))[1].values
        w01, w12 = e[1] - e[0], e[2] - e[1]
        mid = chi_t_numeric(p, LAM, 0.5 * (w01 + w12))
        below = chi_t_numeric(p, LAM, w12 - 0.2 * (w01 - w12))
        above = chi_t_numeric(p, LAM, w01 + 0.2 * (w01 - w12))
        ok = changes == 1 and mid > 0 and below < 0 and above < 0
        return ok, f"{changes} sign change(s) of chi_t on Delta_t in (0, E_C) (required 1); straddling chi_t/2pi = {to_mhz(mid):+.3f} MHz"

    run(acceptance_report, "A3", 10.0, check)


def test_a04_chi_mt_limits(acceptance_report):
    def check():
        p0 = MTParams(EC, EJ)
        zero = chi_mt_numeric(p0, LAM, omega_r_mt(p0, LAM, -10))
        chi_t = chi_t_numeric(p0, LAM, omega_r_transmon(p0, LAM, -10))
        wr = omega_r_mt(mt(0.2), LAM, -10)
        at_pi = chi_mt_numeric(mt(0.2, phi_x=math.pi), LAM, wr)
        before = chi_mt_numeric(mt(0.2, phi_x=0.9 * math.pi), LAM, wr)
        after = chi_mt_numeric(mt(0.2, phi_x=1.1 * math.pi), LAM, wr)
        ratios = np.linspace(0.05, 0.5, 8)
        r = [abs(chi_mt_numeric(mt(x), LAM, omega_r_mt(mt(x), LAM, -10)) / chi_t) for x in ratios]
        mono = bool(np.all(np.diff(r) > 0))
        parts = {
            "zero at E_M=0": zero == 0.0,
            "vanishes at phi_x=pi": abs(at_pi) < 1e-6 * abs(chi_t),
            "sign change at phi_x=pi": before * after < 0,
            "strictly monotone": mono,
            "ratio >= 0.5 at 0.5": r[-1] >= 0.5,
        }
        failed = [k for k, v in parts.items() if not v]
        detail = f"|chi_mt/chi_t| = {r[0]:.3f} -> {r[-1]:.3f} over 2E_M/omega_t in [0.05, 0.5]; " + (
            "all parts hold" if not failed else "failed: " + ", ".join(failed)
        )
        return not failed, detail

    run(acceptance_report, "A4", 30.0, check)


def test_a05_box_exact_diagonalization(acceptance_report):
    def check():
        rng = np.random.default_rng(7)
        worst = 0.0
        for _ in range(100):
            p = MBParams(
                E_tot=rng.uniform(1, 10),
                eps_dot=rng.uniform(1, 10),
                n_g=rng.uniform(0, 1),
                t_L=rng.uniform(0, 2),
                t_R=rng.uniform(0, 2),
                phi_x=rng.uniform(0, 2 * math.pi),
            )
            n = int(rng.integers(-2, 3))
            w = hermitian_eig(block_hamiltonian(p, n)).values / TWO_PI
            s = block_solution(p, n)
            ref = np.sort([s.E_n, s.E_n + s.eps_m, s.E_n + s.eps_c, s.E_n + s.eps_c + s.eps_m])
            worst = max(worst, np.max(np.abs(w - ref)))
        return worst < 1e-10, f"max |eig - closed form| = {worst:.1e} GHz over 100 draws (tol 1e-10)"

    run(acceptance_report, "A5", 5.0, check)


def test_a06_resonant_dot_limit(acceptance_report):
    def check():
        worst = 0.0
        gcm = 0.0
        for tl, tr, phi in ((0.6, 0.9, 0.7), (1.0, 1.0, 0.0), (0.3, 1.7, 2.5)):
            p = MBParams(E_tot=2.0, eps_dot=-2.0, t_L=tl, t_R=tr, phi_x=phi)
            c = box_couplings(p, 0, LAM)
            gcm = max(gcm, abs(c.g_c), abs(c.g_m))
            worst = max(worst, abs(abs(c.g_plus) / (LAM / 2) - 1), abs(abs(c.g_minus) / (LAM / 2) - 1))
        eps = np.finfo(float).eps
        ok = gcm == 0.0 and worst <= 2 * eps
        return ok, f"max |g_c|, |g_m| = {gcm:.1e}; max rel |g_+-| - lambda/2 = {worst:.1e}"

    run(acceptance_report, "A6", 1.0, check)


def test_a07_chi_mb_routes(acceptance_report):
    def check():
        worst = 0.0
        for phi in (0.0, math.pi / 2):
            for tod in np.linspace(0.05, 0.5, 10):
                p = MBParams(E_tot=1.0, eps_dot=4.0, t_L=5.0 * tod, t_R=5.0 * tod, phi_x=phi)
                wr = omega_r_box(p, LAM, -10)
                num, ana = chi_mb_numeric(p, LAM, wr), chi_mb_analytic(p, LAM, wr)
                worst = max(worst, abs(num / ana - 1))
        p = MBParams(E_tot=1.0, eps_dot=4.0, t_L=1.0, t_R=1.0, phi_x=math.pi / 2)
        wr = omega_r_box(p, LAM, -10)
        s, c = block_solution(p, 0), box_couplings(p, 0, LAM)
        oracle = 0.5 * (abs(c.g_plus) ** 2 / (TWO_PI * s.f_plus - wr) - abs(c.g_minus) ** 2 / (TWO_PI * s.f_minus - wr))
        spot = chi_mb_analytic(p, LAM, wr)
        ok = worst <= 0.05 and abs(to_mhz(spot) / -0.80 - 1) <= 0.01 and abs(spot / oracle - 1) <= 0.01
        return ok, f"max numeric/analytic gap {worst:.2%} (tol 5%); spot chi_mb/2pi = {to_mhz(spot):.4f} MHz vs -0.80 (tol 1%)"

    run(acceptance_report, "A7", 30.0, check)


def _at_omega_q(qtype, omega_q=1.0):
    return apply_override(default_config(qtype), "qubit.omega_q", omega_q)


def test_a08_mhz_scale_shifts(acceptance_report):
    def check():
        c_mt = to_mhz(chi_numeric(_at_omega_q("majorana-transmon"))[0])
        c_mb = to_mhz(chi_numeric(_at_omega_q("majorana-box"))[0])
        ok = 0.1 <= abs(c_mt) <= 10 and 0.1 <= abs(c_mb) <= 10 and abs(c_mb) > abs(c_mt)
        return ok, f"chi_mt/2pi = {c_mt:.4f} MHz, chi_mb/2pi = {c_mb:.4f} MHz at omega_q/2pi = 1 GHz"

    run(acceptance_report, "A8", 30.0, check)


def test_a09_readout_budgets(acceptance_report):
    def check():
        taus = {q: time_to_fidelity(_dispersive_readout(_at_omega_q(q)), 0.9999) for q in ("majorana-transmon", "majorana-box")}
        chi = TWO_PI * 1e-3
        ref = time_to_fidelity(DispersiveBudgetParams(chi=chi, drive_amp=2 * chi * math.sqrt(5 / 2)), 0.9999)
        ok = all(t < 1.0 for t in taus.values()) and abs(ref / 0.39 - 1) <= 0.02
        return ok, (
            f"tau(99.99%) = {taus['majorana-transmon']:.4f} us (transmon-type), "
            f"{taus['majorana-box']:.4f} us (box), limit 1 us; oracle {ref:.4f} us vs 0.39 (tol 2%)"
        )

    run(acceptance_report, "A9", 5.0, check)


def test_a10_longitudinal_comparison(acceptance_report):
    def check():
        cfg = _at_omega_q("majorana-box")
        disp = _dispersive_readout(cfg)
        lon = LongitudinalBudgetParams(gz_tilde=TWO_PI * 0.01, kappa=disp.kappa)
        # dispersive drive rescaled to the longitudinal photon number
        disp_matched = replace(disp, drive_amp=disp.drive_amp * math.sqrt(lon.nbar / disp.nbar))
        fast = True
        for F in (0.9, 0.95, 0.99, 0.995, 0.999, 0.9995, 0.9999):
            tl = time_to_fidelity(lon, F)
            fast &= tl < time_to_fidelity(disp_matched, F) and tl < time_to_fidelity(disp, F)

        p0 = MBParams(E_tot=1.0, eps_dot=4.0)
        d = p0.E_tot + p0.eps_dot
        target = TWO_PI * 0.01
        t_amps, gz_t = [], 0.0
        for tb in np.linspace(0.05, 1.0, 20):
            p = replace(p0, t_L=tb * d, t_R=tb * d)
            a = solve_modulation_amplitude(p, LAM, "tunneling", target, tb * d)
            if a is not None:
                t_amps.append(a / d)
            gz_t = max(gz_t, abs(longitudinal_modulation(p, LAM, "tunneling", min(0.1 * d, tb * d))[0]))
        pb = replace(p0, t_L=0.5 * d, t_R=0.5 * d)
        f_amps, gz_f = [], 0.0
        for ph in np.linspace(0.0, 2.0, 21):
            p = replace(pb, phi_x=ph * math.pi)
            a = solve_modulation_amplitude(p, LAM, "flux", target, math.pi)
            if a is not None:
                f_amps.append(a)
            gz_f = max(gz_f, abs(longitudinal_modulation(p, LAM, "flux", math.pi / 10)[0]))
        t_ok = bool(t_amps) and abs(min(t_amps) / 0.1 - 1) <= 0.2
        f_ok = bool(f_amps) and abs(min(f_amps) / (math.pi / 10) - 1) <= 0.2
        detail = (
            f"longitudinal faster at every F: {fast}; "
            f"min t~/delta for 10 MHz: {min(t_amps) if t_amps else 'unreachable'} (max g~z at 0.1: {to_mhz(gz_t):.3f} MHz); "
            f"min phi~/pi: {min(f_amps) / math.pi if f_amps else 'unreachable'} (max g~z at pi/10: {to_mhz(gz_f):.3f} MHz)"
        )
        return fast and t_ok and f_ok, detail

    run(acceptance_report, "A10", 60.0, check)


def test_a11_indirect_model_equivalence(acceptance_report):
    def check():
        b = ChargeBasis(30)
        worst_spec, worst_chi = 0.0, 0.0
        for ratio in (0.1, 0.2, 0.4):
            p = mt(ratio)
            q = match_indirect_tunneling(p, 20.0, b)
            direct = mt_sector_eigs(p, b)
            indirect = indirect_sector_eigs(q, b)
            g_d = min(e.values[0] for e in direct.values())
            g_i = min(e.values[0] for e, _ in indirect.values())
            for s in (1, -1):
                fd = (direct[s].values[:3] - g_d) / TWO_PI
                fi = (indirect[s][0].values[:3] - g_i) / TWO_PI
                nz = fd > 1e-9
                worst_spec = max(worst_spec, np.max(np.abs(fi[nz] / fd[nz] - 1)))
            wr = omega_r_mt(p, LAM, -10)
            worst_chi = max(worst_chi, abs(chi_mt_indirect(q, LAM, wr, b) / chi_mt_numeric(p, LAM, wr, b) - 1))
        ok = worst_spec <= 0.05 and worst_chi <= 0.05
        return ok, f"eps = 20 GHz, 2E_M/omega_t in (0.1, 0.2, 0.4): max spectrum gap {worst_spec:.3%}, max chi_mt gap {worst_chi:.2%} (tol 5%)"

    run(acceptance_report, "A11", 60.0, check)


def test_a12_engine_oracle(acceptance_report):
    def check():
        wq, g0, wr = TWO_PI * 5.0, TWO_PI * 0.1, TWO_PI * 6.3
        w = np.array([0.0, wq])
        g = np.array([[0, g0], [g0, 0]], dtype=complex)
        res = dispersive_shifts(w, g, wr)
        # hand sum with both co- and counter-rotating denominators
        hand = 2 * (g0**2 / (wq - wr) + g0**2 / (wq + wr))
        rel = abs((res.chi[1] - res.chi[0]) / hand - 1)
        rel2 = abs(two_level_chi(wq, g0, wr) / hand - 1)
        scaled = dispersive_shifts(w, 3.0 * g, wr)
        scale_err = np.max(np.abs(scaled.chi - 9.0 * res.chi)) / np.max(np.abs(9.0 * res.chi))
        ok = rel <= 1e-12 and rel2 <= 1e-12 and scale_err <= 4 * np.finfo(float).eps
        return ok, f"two-level rel error {max(rel, rel2):.1e} (tol 1e-12); lambda^2 scaling error {scale_err:.1e}"

    run(acceptance_report, "A12", 1.0, check)
