"""Readout budgets: SNR, fidelity, photon numbers and time to a target fidelity.

Rates are angular frequencies in rad/ns; integration times are in microseconds.

Dispersive readout at kappa = 2 chi:

    SNR = 2 |eps| sqrt(tau/chi) [1 - (1 - e^{-chi tau} cos(chi tau)) / (chi tau)]

Longitudinal readout with modulated coupling amplitude gz:

    SNR = sqrt(8) |gz| sqrt(tau/kappa) [1 - 2 (1 - e^{-kappa tau/2}) / (kappa tau)]

Fidelity F = 1 - erfc(SNR/2).
"""

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np

from . import _kernels
from .errors import DomainError, NumericError
from .units import us_to_ns

SERIES_THRESHOLD = 1e-3
KAPPA_RTOL = 1e-9
TAU_START_US = 1e-4
FIDELITY_ATOL = 1e-8
MAX_ITER = 200
FOURIER_POINTS = 256


@dataclass(frozen=True)
class DispersiveBudgetParams:
    """chi, kappa and drive_amp in angular GHz; kappa defaults to 2|chi|."""

    chi: float
    drive_amp: float
    kappa: float = None
    delta_over_g: float = -10.0
    nbar_target_ratio: float = 0.2

    def __post_init__(self):
        if self.chi == 0:
            raise DomainError("chi must be nonzero")
        if self.drive_amp < 0:
            raise DomainError("drive amplitude must be nonnegative")
        if self.kappa is None:
            object.__setattr__(self, "kappa", 2.0 * abs(self.chi))
        if not self.kappa > 0:
            raise DomainError("kappa must be positive")
        if abs(self.kappa - 2 * abs(self.chi)) > KAPPA_RTOL * self.kappa:
            warnings.warn(
                "kappa != 2 chi: the dispersive SNR expression assumes kappa = 2 chi",
                RuntimeWarning,
                stacklevel=3,
            )

    @property
    def nbar(self):
        return 2.0 * (self.drive_amp / self.kappa) ** 2


@dataclass(frozen=True)
class LongitudinalBudgetParams:
    """gz_tilde and kappa in angular GHz."""

    gz_tilde: float
    kappa: float

    def __post_init__(self):
        if self.gz_tilde < 0:
            raise DomainError("gz_tilde must be nonnegative")
        if not self.kappa > 0:
            raise DomainError("kappa must be positive")

    @property
    def nbar(self):
        return (self.gz_tilde / self.kappa) ** 2


@dataclass(frozen=True)
class ReadoutBudget:
    snr: float
    fidelity: float
    tau: float
    nbar: float
    scheme: str


def _dispersive_bracket(x):
    if x < SERIES_THRESHOLD:
        return x * x / 3.0 - x**3 / 6.0 + x**4 / 30.0
    return 1.0 - (1.0 - math.exp(-x) * math.cos(x)) / x


def _longitudinal_bracket(y):
    if y < SERIES_THRESHOLD:
        return y / 4.0 - y * y / 24.0 + y**3 / 192.0 - y**4 / 1920.0
    return 1.0 - 2.0 * (1.0 - math.exp(-0.5 * y)) / y


def snr_dispersive(p, tau):
    """Dispersive SNR after integrating for ``tau`` microseconds."""
    if tau < 0:
        raise DomainError("tau must be nonnegative")
    chi = abs(p.chi)
    t = us_to_ns(tau)
    return 2.0 * p.drive_amp * math.sqrt(t / chi) * _dispersive_bracket(chi * t)


def snr_longitudinal(p, tau):
    """Longitudinal SNR after integrating for ``tau`` microseconds."""
    if tau < 0:
        raise DomainError("tau must be nonnegative")
    t = us_to_ns(tau)
    return math.sqrt(8.0) * p.gz_tilde * math.sqrt(t / p.kappa) * _longitudinal_bracket(p.kappa * t)


def fidelity_from_snr(snr):
    """F = 1 - erfc(SNR/2) for a scalar or array SNR."""
    x = np.asarray(snr, dtype=float)
    if np.any(x < 0):
        raise DomainError("SNR must be nonnegative")
    return 1.0 - _kernels.erfc(x / 2.0 if x.ndim else float(x) / 2.0)


def drive_from_photon_budget(chi, kappa, delta_over_g, nbar_ratio):
    """Drive amplitude giving nbar = nbar_ratio * n_crit, n_crit = (Delta/2g)^2.

    Returns
    -------
    drive_amp, n_crit, nbar
    """
    if kappa <= 0 or nbar_ratio < 0:
        raise DomainError("kappa must be positive and nbar_ratio nonnegative")
    n_crit = (delta_over_g / 2.0) ** 2
    nbar = nbar_ratio * n_crit
    return kappa * math.sqrt(nbar / 2.0), n_crit, nbar


def dispersive_params_from_budget(chi, delta_over_g=-10.0, nbar_ratio=0.2, kappa=None):
    """DispersiveBudgetParams with the drive fixed by the photon budget."""
    kappa = 2.0 * abs(chi) if kappa is None else kappa
    eps, _, _ = drive_from_photon_budget(chi, kappa, delta_over_g, nbar_ratio)
    return DispersiveBudgetParams(
        chi=chi, drive_amp=eps, kappa=kappa, delta_over_g=delta_over_g, nbar_target_ratio=nbar_ratio
    )


def snr(p, tau):
    if isinstance(p, DispersiveBudgetParams):
        return snr_dispersive(p, tau)
    if isinstance(p, LongitudinalBudgetParams):
        return snr_longitudinal(p, tau)
    raise DomainError(f"unknown readout parameters {type(p).__name__}")


def budget(p, tau):
    s = snr(p, tau)
    scheme = "dispersive" if isinstance(p, DispersiveBudgetParams) else "longitudinal"
    return ReadoutBudget(snr=s, fidelity=float(fidelity_from_snr(s)), tau=tau, nbar=p.nbar, scheme=scheme)


def time_to_fidelity(p, target_F):
    """Shortest integration time (microseconds) reaching fidelity ``target_F``."""
    if not 0 < target_F < 1:
        raise DomainError("target fidelity must lie in (0, 1)")

    def F(tau):
        return float(fidelity_from_snr(snr(p, tau)))

    lo, hi = 0.0, TAU_START_US
    it = 0
    while F(hi) < target_F:
        lo, hi = hi, 2.0 * hi
        it += 1
        if it > MAX_ITER:
            raise NumericError(f"fidelity {target_F} not reached within tau = {hi:.3e} us")
    for _ in range(MAX_ITER):
        mid = 0.5 * (lo + hi)
        f = F(mid)
        if abs(f - target_F) < FIDELITY_ATOL:
            return mid
        if f < target_F:
            lo = mid
        else:
            hi = mid
    raise NumericError(f"time_to_fidelity did not converge after {MAX_ITER} bisection steps")


def longitudinal_modulation(p, lam, parameter, mod_amplitude, n=0, points=FOURIER_POINTS):
    """First-harmonic longitudinal coupling from modulating tunnelling or flux.

    The modulated quantity is x(theta) = x_bar + mod_amplitude cos(theta), with
    x_bar taken from ``p`` (symmetric t_L = t_R = t for ``"tunneling"``, phi_x
    for ``"flux"``). g_m(theta) is the box coupling g_m and its first cosine
    coefficient is g~_m; the return value is g~_z = g~_m / 2.

    Returns
    -------
    gz_tilde : float
        From the Fourier coefficient (angular GHz).
    gz_linear : float
        Linearized estimate (dg_m/dx) * mod_amplitude / 2.
    """
    from .box import box_couplings

    if parameter not in ("tunneling", "flux"):
        raise DomainError(f"parameter must be 'tunneling' or 'flux', got {parameter!r}")
    if parameter == "tunneling":
        if p.t_L != p.t_R:
            raise DomainError("tunnelling modulation assumes t_L = t_R")
        if p.t_L - abs(mod_amplitude) < 0:
            raise DomainError("modulation would drive the tunnel amplitude negative")

    def at(x):
        q = replace(p, t_L=x, t_R=x) if parameter == "tunneling" else replace(p, phi_x=x)
        return box_couplings(q, n, lam).g_m

    x0 = p.t_L if parameter == "tunneling" else p.phi_x
    theta = 2.0 * np.pi * np.arange(points) / points
    gm = np.array([at(x0 + mod_amplitude * math.cos(th)) for th in theta])
    gm_tilde = 2.0 / points * float(np.sum(gm * np.cos(theta)))
    h = 1e-6 * max(1.0, abs(x0))
    if parameter == "tunneling" and x0 - h < 0:
        deriv = (at(x0 + h) - at(x0)) / h
    else:
        deriv = (at(x0 + h) - at(x0 - h)) / (2 * h)
    return 0.5 * gm_tilde, 0.5 * deriv * mod_amplitude


def solve_modulation_amplitude(p, lam, parameter, target_gz, amp_max, n=0, points=FOURIER_POINTS):
    """Smallest modulation amplitude in (0, amp_max] giving g~_z = target_gz.

    Scans the amplitude on a fine grid for the first crossing of |g~_z| with the
    target and refines it with Brent's method. Returns None when the target is
    out of reach.
    """
    from scipy.optimize import brentq

    def f(a):
        return abs(longitudinal_modulation(p, lam, parameter, a, n, points)[0]) - target_gz

    if target_gz <= 0:
        return 0.0
    prev = 0.0
    for a in np.linspace(0.0, amp_max, 65)[1:]:
        if f(a) >= 0:
            # f(0) = -target < 0, so [prev, a] brackets the crossing
            return float(brentq(f, prev, a, xtol=1e-12))
        prev = a
    return None
