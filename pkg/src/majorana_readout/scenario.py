"""Scenario configuration: defaults, validation, sweeps and evaluation.

A scenario is a nested dict with sections ``qubit``, ``resonator``,
``numerics`` and ``readout`` plus the tag ``qubit_type``. Units are fixed:
linear GHz for energies and frequencies, radians for phases, microseconds for
times.

Besides literal config paths, sweeps accept a few derived keys:

``qubit.EM_ratio``
    2 E_M / omega_t (Majorana transmon).
``qubit.t_over_delta``
    symmetric tunnelling t_L = t_R = t in units of delta (box).
``qubit.omega_q``
    qubit frequency in GHz; sets E_M (Majorana transmon, closed form) or the
    symmetric tunnelling (box, phi_x = 0 relation eps_m = (f_+ - |delta|)/2).
``qubit.phi_x_over_pi``
    flux phase in units of pi.
"""

import copy
import json
import math

from .box import MBParams, block_solution, box_couplings, chi_mb_analytic, chi_mb_numeric, delta_n, omega_r_box
from .errors import DomainError, ResonantPairError
from .operators import ChargeBasis
from .transmon import (
    MTParams,
    chi_mt_analytic,
    chi_mt_numeric,
    chi_t_analytic,
    chi_t_numeric,
    kerr_approximation,
    omega_r_mt,
    omega_r_transmon,
)
from .units import TWO_PI, to_mhz

QUBIT_TYPES = ("transmon", "majorana-transmon", "majorana-box")

_QUBIT_DEFAULTS = {
    "transmon": {"E_C": 0.25, "E_J": 12.5, "n_g": 0.0},
    "majorana-transmon": {"E_C": 0.25, "E_J": 12.5, "n_g": 0.0, "E_M": 0.475, "phi_x": 0.0},
    "majorana-box": {"E_tot": 1.0, "eps_dot": 4.0, "n_g": 0.0, "t_L": 1.0, "t_R": 1.0, "phi_x": 0.0, "n": 0},
}

_SECTION_DEFAULTS = {
    "resonator": {"lambda_GHz": 0.1, "delta_over_g": -10.0},
    "numerics": {"n_max": None, "guard": 1e-3, "k_levels": 3, "geometry": "island", "n_window": [-1, 2]},
    "readout": {
        "nbar_ratio": 0.2,
        "kappa_GHz": None,
        "gz_tilde_GHz": 0.01,
        "target_fidelity": 0.9999,
        "tau_grid_us": [0.05 * k for k in range(1, 41)],
    },
}

DERIVED_KEYS = ("qubit.EM_ratio", "qubit.t_over_delta", "qubit.omega_q", "qubit.phi_x_over_pi")


class ConfigError(DomainError):
    """Invalid scenario configuration; ``path`` names the offending field."""

    def __init__(self, path, message):
        self.path = path
        super().__init__(f"{path}: {message}")


def default_config(qubit_type="majorana-transmon"):
    if qubit_type not in QUBIT_TYPES:
        raise ConfigError("qubit_type", f"must be one of {', '.join(QUBIT_TYPES)}")
    cfg = {"qubit_type": qubit_type, "qubit": dict(_QUBIT_DEFAULTS[qubit_type])}
    for name, sec in _SECTION_DEFAULTS.items():
        cfg[name] = copy.deepcopy(sec)
    return cfg


def _is_number(x):
    return isinstance(x, (int, float)) and not isinstance(x, bool) and math.isfinite(x)


def resolve_config(raw):
    """Merge ``raw`` over the defaults for its qubit type and validate."""
    if not isinstance(raw, dict):
        raise ConfigError("<root>", "config must be a JSON object")
    qtype = raw.get("qubit_type", "majorana-transmon")
    cfg = default_config(qtype)
    for key, val in raw.items():
        if key == "qubit_type":
            continue
        if key not in cfg:
            raise ConfigError(key, "unknown section")
        if not isinstance(val, dict):
            raise ConfigError(key, "section must be an object")
        for k, v in val.items():
            if k not in cfg[key] and not (key == "resonator" and k == "omega_r_GHz"):
                raise ConfigError(f"{key}.{k}", "unknown field")
            cfg[key][k] = v
    res = raw.get("resonator", {})
    if "omega_r_GHz" in res:
        if "delta_over_g" in res:
            raise ConfigError("resonator", "give exactly one of delta_over_g / omega_r_GHz")
        cfg["resonator"].pop("delta_over_g")
    validate(cfg)
    return cfg


def validate(cfg):
    for k, v in cfg["qubit"].items():
        if k == "n":
            if not isinstance(v, int) or isinstance(v, bool):
                raise ConfigError("qubit.n", "must be an integer")
        elif not _is_number(v):
            raise ConfigError(f"qubit.{k}", "must be a finite number")
    r = cfg["resonator"]
    if ("delta_over_g" in r) == ("omega_r_GHz" in r):
        raise ConfigError("resonator", "give exactly one of delta_over_g / omega_r_GHz")
    for k in ("lambda_GHz", "delta_over_g", "omega_r_GHz"):
        if k in r and not _is_number(r[k]):
            raise ConfigError(f"resonator.{k}", "must be a finite number")
    if r["lambda_GHz"] <= 0:
        raise ConfigError("resonator.lambda_GHz", "must be positive")
    n = cfg["numerics"]
    if n["n_max"] is not None and (not isinstance(n["n_max"], int) or n["n_max"] < 2):
        raise ConfigError("numerics.n_max", "must be null or an integer >= 2")
    if not _is_number(n["guard"]) or n["guard"] <= 0:
        raise ConfigError("numerics.guard", "must be a positive number")
    if not isinstance(n["k_levels"], int) or n["k_levels"] < 1:
        raise ConfigError("numerics.k_levels", "must be a positive integer")
    if n["geometry"] not in ("island", "dot"):
        raise ConfigError("numerics.geometry", "must be 'island' or 'dot'")
    w = n["n_window"]
    if (
        not isinstance(w, list)
        or len(w) != 2
        or not all(isinstance(v, int) and not isinstance(v, bool) for v in w)
        or w[0] > w[1]
    ):
        raise ConfigError("numerics.n_window", "must be [n_lo, n_hi] with integers n_lo <= n_hi")
    ro = cfg["readout"]
    for k in ("nbar_ratio", "gz_tilde_GHz", "target_fidelity"):
        if not _is_number(ro[k]):
            raise ConfigError(f"readout.{k}", "must be a finite number")
    if not 0 < ro["target_fidelity"] < 1:
        raise ConfigError("readout.target_fidelity", "must lie in (0, 1)")
    if ro["kappa_GHz"] is not None and (not _is_number(ro["kappa_GHz"]) or ro["kappa_GHz"] <= 0):
        raise ConfigError("readout.kappa_GHz", "must be null or positive")
    grid = ro["tau_grid_us"]
    if not isinstance(grid, list) or not grid or not all(_is_number(t) and t >= 0 for t in grid):
        raise ConfigError("readout.tau_grid_us", "must be a nonempty list of nonnegative numbers")
    try:
        qubit_params(cfg)
    except DomainError as exc:
        raise ConfigError("qubit", str(exc)) from exc
    return cfg


def load_config(path):
    try:
        with open(path) as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError("--config", f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("--config", f"invalid JSON: {exc}") from exc
    return resolve_config(raw)


# --- sweeps ---------------------------------------------------------------


def parse_sweep(text):
    """``key=start:stop:count`` (inclusive linear grid) or ``key=v1,v2,...``."""
    if "=" not in text:
        raise ConfigError("--sweep", f"expected key=start:stop:count, got {text!r}")
    key, spec = text.split("=", 1)
    key = key.strip()
    try:
        if ":" in spec:
            parts = spec.split(":")
            if len(parts) != 3:
                raise ValueError
            start, stop, count = float(parts[0]), float(parts[1]), int(parts[2])
        else:
            values = [float(v) for v in spec.split(",") if v.strip()]
    except ValueError as exc:
        raise ConfigError("--sweep", f"cannot parse grid {spec!r}") from exc
    if ":" in spec:
        if count < 1:
            raise ConfigError("--sweep", "count must be >= 1")
        if count == 1:
            return key, [start]
        step = (stop - start) / (count - 1)
        return key, [start + i * step for i in range(count - 1)] + [stop]
    if not values:
        raise ConfigError("--sweep", "empty grid")
    return key, values


def apply_override(cfg, key, value):
    """Copy of ``cfg`` with one (possibly derived) parameter set."""
    out = copy.deepcopy(cfg)
    q = out["qubit"]
    qtype = out["qubit_type"]
    if key == "qubit.EM_ratio":
        if qtype != "majorana-transmon":
            raise ConfigError(key, "only defined for the majorana-transmon")
        k = kerr_approximation(MTParams(q["E_C"], q["E_J"]))
        q["E_M"] = 0.5 * value * k.omega_t
    elif key == "qubit.t_over_delta":
        if qtype != "majorana-box":
            raise ConfigError(key, "only defined for the majorana-box")
        d = abs(delta_n(qubit_params(out), q["n"]))
        q["t_L"] = q["t_R"] = value * d
    elif key == "qubit.phi_x_over_pi":
        if "phi_x" not in q:
            raise ConfigError(key, "qubit has no flux phase")
        q["phi_x"] = value * math.pi
    elif key == "qubit.omega_q":
        if qtype == "majorana-transmon":
            k = kerr_approximation(MTParams(q["E_C"], q["E_J"]))
            q["E_M"] = value / (2.0 * (1.0 - k.xi0))
        elif qtype == "majorana-box":
            d = abs(delta_n(qubit_params(out), q["n"]))
            f_plus = d + 2.0 * value
            t = 0.5 * math.sqrt(f_plus**2 - d**2)
            q["t_L"] = q["t_R"] = t
            q["phi_x"] = 0.0
        else:
            raise ConfigError(key, "the transmon frequency is fixed by E_C and E_J")
    else:
        section, _, field = key.partition(".")
        if section not in ("qubit", "resonator", "numerics", "readout") or field not in out[section]:
            raise ConfigError(key, "unknown sweep parameter")
        out[section][field] = int(round(value)) if field in ("n", "n_max", "k_levels") else value
    validate(out)
    return out


# --- evaluation -------------------------------------------------------------


def qubit_params(cfg):
    q = cfg["qubit"]
    if cfg["qubit_type"] == "majorana-box":
        return MBParams(q["E_tot"], q["eps_dot"], q["n_g"], q["t_L"], q["t_R"], q["phi_x"])
    if cfg["qubit_type"] == "transmon":
        return MTParams(q["E_C"], q["E_J"], q["n_g"])
    return MTParams(q["E_C"], q["E_J"], q["n_g"], q["E_M"], q["phi_x"])


def basis_of(cfg):
    n = cfg["numerics"]["n_max"]
    return None if n is None else ChargeBasis(n)


def coupling_rate(cfg):
    """Reference coupling g (angular) used for Delta/g and n_crit."""
    lam = TWO_PI * cfg["resonator"]["lambda_GHz"]
    p = qubit_params(cfg)
    if cfg["qubit_type"] == "majorana-box":
        return abs(box_couplings(p, cfg["qubit"]["n"], lam).g_plus)
    return lam * kerr_approximation(p).g_t_per_lambda


def reference_frequency(cfg):
    """Transition frequency (angular) against which Delta is measured."""
    p = qubit_params(cfg)
    if cfg["qubit_type"] == "majorana-box":
        return TWO_PI * block_solution(p, cfg["qubit"]["n"]).f_plus
    k = kerr_approximation(p)
    return TWO_PI * (k.omega_t if cfg["qubit_type"] == "transmon" else k.omega_plus)


def omega_r(cfg):
    r = cfg["resonator"]
    if "omega_r_GHz" in r:
        return TWO_PI * r["omega_r_GHz"]
    lam = TWO_PI * r["lambda_GHz"]
    p = qubit_params(cfg)
    if cfg["qubit_type"] == "majorana-box":
        return omega_r_box(p, lam, r["delta_over_g"], cfg["qubit"]["n"])
    if cfg["qubit_type"] == "transmon":
        return omega_r_transmon(p, lam, r["delta_over_g"])
    return omega_r_mt(p, lam, r["delta_over_g"])


def delta_over_g(cfg):
    r = cfg["resonator"]
    if "delta_over_g" in r:
        return r["delta_over_g"]
    g = coupling_rate(cfg)
    return (reference_frequency(cfg) - TWO_PI * r["omega_r_GHz"]) / g


def qubit_frequency(cfg):
    """Logical qubit splitting in GHz."""
    p = qubit_params(cfg)
    if cfg["qubit_type"] == "majorana-box":
        return abs(block_solution(p, cfg["qubit"]["n"]).eps_m)
    if cfg["qubit_type"] == "transmon":
        return kerr_approximation(p).omega_t
    return kerr_approximation(p).omega_mt


def chi_numeric(cfg):
    """(chi, resonance_margin) in angular GHz."""
    p = qubit_params(cfg)
    lam = TWO_PI * cfg["resonator"]["lambda_GHz"]
    wr = omega_r(cfg)
    guard = cfg["numerics"]["guard"]
    if cfg["qubit_type"] == "majorana-box":
        return chi_mb_numeric(
            p, lam, wr, cfg["qubit"]["n"], geometry=cfg["numerics"]["geometry"], guard=guard, with_margin=True
        )
    if cfg["qubit_type"] == "transmon":
        return chi_t_numeric(p, lam, wr, basis_of(cfg), guard=guard, with_margin=True)
    return chi_mt_numeric(p, lam, wr, basis_of(cfg), guard=guard, with_margin=True)


def chi_analytic(cfg):
    p = qubit_params(cfg)
    lam = TWO_PI * cfg["resonator"]["lambda_GHz"]
    wr = omega_r(cfg)
    guard = cfg["numerics"]["guard"]
    if cfg["qubit_type"] == "majorana-box":
        # |g|^2 is unchanged by the lambda -> -lambda geometry switch
        return chi_mb_analytic(p, lam, wr, cfg["qubit"]["n"], guard=guard)
    if cfg["qubit_type"] == "transmon":
        return chi_t_analytic(p, lam, wr, guard=guard)
    return chi_mt_analytic(p, lam, wr, guard=guard)


def chi_row(cfg, method):
    """Row fragment (chi_numeric_MHz, chi_analytic_MHz, resonance_margin, flag)."""
    num = ana = margin = None
    flags = []
    if method in ("numeric", "both"):
        try:
            c, margin = chi_numeric(cfg)
            num = to_mhz(c)
        except ResonantPairError as exc:
            flags.append(f"resonant:{exc.l}-{exc.lp}")
    if method in ("analytic", "both"):
        try:
            ana = to_mhz(chi_analytic(cfg))
        except ResonantPairError:
            flags.append("resonant:analytic")
    return num, ana, margin, ";".join(flags)
