"""Transmon and Majorana transmon: Hamiltonians, Kerr closed forms and dispersive shifts.

The Majorana transmon is a transmon whose junction also hosts a pair of
Majorana zero modes with overlap energy E_M,

    H = E_C (N - n_g)^2 - E_J cos(phi) - E_M p cos((phi + phi_x)/2),

where p = +-1 is the Majorana parity. Each parity sector is an independent
matrix. The charge is represented on the even sublattice N = 2k and the
half-phase term through ``branch_half_shift`` (phi restricted to one branch
[-pi, pi)); this keeps the two parity sectors physically distinct, so E_M splits
the ground doublet by omega_mt.

All builders take parameters in linear GHz and return angular frequencies
(rad/ns).
"""

import math
import warnings
from dataclasses import dataclass, replace

import numpy as np
from scipy.optimize import brentq

from .engine import DEFAULT_GUARD, coupling_matrix, dispersive_shifts, qubit_chi
from .errors import DomainError, NumericError, ResonantPairError
from .operators import (
    ChargeBasis,
    HermitianEigenSystem,
    branch_half_shift,
    hermitian_eig,
    kron,
    pair_number_operator,
    pair_shift,
)
from .units import TWO_PI

DEFAULT_N_MAX = 30
CONVERGENCE_RTOL = 1e-8
N_MAX_LIMIT = 960


@dataclass(frozen=True)
class MTParams:
    """Majorana transmon parameters (GHz, radians)."""

    E_C: float
    E_J: float
    n_g: float = 0.0
    E_M: float = 0.0
    phi_x: float = 0.0

    def __post_init__(self):
        if not self.E_C > 0:
            raise DomainError(f"E_C must be positive, got {self.E_C}")
        if self.E_J < 0:
            raise DomainError(f"E_J must be nonnegative, got {self.E_J}")
        if self.E_M < 0:
            raise DomainError(f"E_M must be nonnegative, got {self.E_M}")


@dataclass(frozen=True)
class IndirectMTParams:
    """Transmon whose Majoranas couple through a single dot level.

    ``base.E_M`` is ignored.
    """

    base: MTParams
    eps_dot: float
    t_L: float
    t_R: float

    def __post_init__(self):
        if self.t_L < 0 or self.t_R < 0:
            raise DomainError("tunnel amplitudes must be nonnegative")


@dataclass(frozen=True)
class KerrApprox:
    """Weakly anharmonic closed forms; frequencies in linear GHz."""

    omega_t: float
    xi0: float
    xi1: float
    xi2: float
    omega_mt: float
    omega_plus: float
    omega_minus: float
    g_t_per_lambda: float


def kerr_approximation(p):
    """Closed-form transmon and Majorana-term level structure at phi_x = 0."""
    EC, EJ, EM = p.E_C, p.E_J, p.E_M
    if EJ < 10 * EC:
        warnings.warn(
            f"E_J/E_C = {EJ / EC:.3g} < 10: the Kerr expansion is unreliable here",
            RuntimeWarning,
            stacklevel=2,
        )
    if EJ == 0:
        raise DomainError("Kerr closed forms need E_J > 0")
    wp = math.sqrt(8 * EJ * EC)
    xi0 = (4 * wp - EC) / (64 * EJ)
    xi1 = (4 * wp - 2 * EC) / (32 * EJ)
    xi2 = EC / (32 * EJ)
    omega_t = wp - EC
    return KerrApprox(
        omega_t=omega_t,
        xi0=xi0,
        xi1=xi1,
        xi2=xi2,
        omega_mt=2 * EM * (1 - xi0),
        omega_plus=omega_t + EM * xi1,
        omega_minus=omega_t - EM * xi1,
        g_t_per_lambda=(EJ / (2 * EC)) ** 0.25,
    )


def omega_r_transmon(p, lam, delta_over_g):
    """Resonator frequency (angular) with Delta = omega_t - omega_r = delta_over_g * g_t."""
    k = kerr_approximation(p)
    return TWO_PI * k.omega_t - delta_over_g * lam * k.g_t_per_lambda


def omega_r_mt(p, lam, delta_over_g):
    """Resonator frequency (angular) with Delta = omega_+ - omega_r = delta_over_g * g_t."""
    k = kerr_approximation(p)
    return TWO_PI * k.omega_plus - delta_over_g * lam * k.g_t_per_lambda


def _basis(basis):
    return ChargeBasis(DEFAULT_N_MAX) if basis is None else basis


def build_mt_hamiltonian(p, parity, basis=None):
    """Parity-sector Hamiltonian on the even charge sublattice (angular GHz)."""
    if parity not in (1, -1):
        raise DomainError(f"parity must be +1 or -1, got {parity}")
    b = _basis(basis)
    N = b.pair_charges.astype(float)
    H = np.diag(p.E_C * (N - p.n_g) ** 2).astype(complex)
    H -= 0.5 * p.E_J * (pair_shift(b, 1) + pair_shift(b, -1))
    if p.E_M != 0:
        half = np.exp(0.5j * p.phi_x) * branch_half_shift(b)
        H -= 0.5 * p.E_M * parity * (half + half.conj().T)
    return TWO_PI * H


def mt_number_operator(basis=None):
    return pair_number_operator(_basis(basis))


def mt_sector_eigs(p, basis=None):
    """{parity: HermitianEigenSystem} for both parity sectors."""
    return {s: hermitian_eig(build_mt_hamiltonian(p, s, basis)) for s in (1, -1)}


def mt_spectrum_vs_ng(p, ng_grid, k_levels, basis=None):
    """Lowest ``k_levels`` per parity sector versus n_g, relative to the global ground.

    Returns a list of (n_g, parity, level, frequency in GHz) rows.
    """
    b = _basis(basis)
    if k_levels > b.pair_dimension:
        raise DomainError(f"k_levels={k_levels} exceeds basis dimension {b.pair_dimension}")
    rows = []
    for ng in ng_grid:
        eigs = mt_sector_eigs(replace(p, n_g=float(ng)), b)
        ground = min(e.values[0] for e in eigs.values())
        for s in (1, -1):
            for lvl in range(k_levels):
                rows.append((float(ng), s, lvl, (eigs[s].values[lvl] - ground) / TWO_PI))
    return rows


def _sector_shifts(eig, N_op, lam, omega_r, k_levels, guard):
    if k_levels is not None:
        eig = HermitianEigenSystem(eig.values[:k_levels], eig.vectors[:, :k_levels])
    return dispersive_shifts(eig.values, coupling_matrix(eig, N_op, lam), omega_r, guard)


def _auto_converge(fn, basis, rtol=CONVERGENCE_RTOL, atol=0.0):
    """Evaluate fn(basis) -> (value, extra); with basis=None double n_max until value settles.

    Settled means a change of at most rtol |value| + atol; ``atol`` keeps values
    that vanish by symmetry from chasing rounding noise.
    """
    if basis is not None:
        return fn(basis)
    n_max = DEFAULT_N_MAX
    prev = fn(ChargeBasis(n_max))
    while n_max < N_MAX_LIMIT:
        n_max *= 2
        cur = fn(ChargeBasis(n_max))
        if abs(cur[0] - prev[0]) <= rtol * abs(cur[0]) + atol:
            return cur
        prev = cur
    raise NumericError(f"no convergence in the charge cutoff up to n_max={N_MAX_LIMIT}")


def _chi_floor(lam, omega_r):
    # rtol times the natural shift scale lambda^2/omega_r
    return CONVERGENCE_RTOL * lam**2 / max(abs(omega_r), lam)


def chi_t_numeric(p, lam, omega_r, basis=None, k_levels=None, guard=DEFAULT_GUARD, with_margin=False):
    """Conventional transmon shift (chi_e - chi_g)/2 from one sector with E_M = 0.

    With ``basis=None`` the charge cutoff is doubled from n_max = 30 until the
    result changes by less than 1e-8 relative. ``with_margin`` also returns the
    smallest |Delta|/|g| that entered the sum.
    """
    q = replace(p, E_M=0.0)

    def run(b):
        eig = hermitian_eig(build_mt_hamiltonian(q, 1, b))
        res = _sector_shifts(eig, mt_number_operator(b), lam, omega_r, k_levels, guard)
        return float(qubit_chi(res, 1, 0)), res.resonance_margin

    chi, margin = _auto_converge(run, basis, atol=_chi_floor(lam, omega_r))
    return (chi, margin) if with_margin else chi


def chi_t_analytic(p, lam, omega_r, guard=DEFAULT_GUARD):
    """Rotating-wave Kerr-ladder estimate -g_t^2 E_C / (Delta (Delta - E_C)), Delta = omega_t - omega_r.

    Uses the harmonic-oscillator matrix elements g_01 = g_t, g_12 = sqrt(2) g_t.
    """
    k = kerr_approximation(p)
    gt = lam * k.g_t_per_lambda
    ec = TWO_PI * p.E_C
    delta = TWO_PI * k.omega_t - omega_r
    for idx, d in ((1, delta), (2, delta - ec)):
        if gt > 0 and abs(d) < guard * gt:
            raise ResonantPairError(idx, idx - 1, d, gt, guard)
    return -(gt**2) * ec / (delta * (delta - ec))


def chi_mt_numeric(p, lam, omega_r, basis=None, k_levels=None, guard=DEFAULT_GUARD, with_margin=False):
    """Majorana transmon shift (chi_{g,-} - chi_{g,+})/2 by exact diagonalization.

    Each parity sector is diagonalized separately and run through the full
    Schrieffer-Wolff sum; the logical states are the two sector ground states.
    Cutoff handling and ``with_margin`` as in ``chi_t_numeric``.
    """

    def run(b):
        N_op = mt_number_operator(b)
        chi_g = {}
        margin = math.inf
        for s in (1, -1):
            eig = hermitian_eig(build_mt_hamiltonian(p, s, b))
            res = _sector_shifts(eig, N_op, lam, omega_r, k_levels, guard)
            chi_g[s] = res.chi[0]
            margin = min(margin, res.resonance_margin)
        return float(0.5 * (chi_g[-1] - chi_g[1])), margin

    chi, margin = _auto_converge(run, basis, atol=_chi_floor(lam, omega_r))
    return (chi, margin) if with_margin else chi


def chi_mt_analytic(p, lam, omega_r, guard=DEFAULT_GUARD):
    """Rotating-wave estimate 0.5 g_t^2 [1/(omega_+ - omega_r) - 1/(omega_- - omega_r)].

    A flux phase enters through the effective overlap E_M cos(phi_x/2).
    """
    k = kerr_approximation(p)
    gt = lam * k.g_t_per_lambda
    split = TWO_PI * p.E_M * math.cos(0.5 * p.phi_x) * k.xi1
    wp = TWO_PI * k.omega_t + split
    wm = TWO_PI * k.omega_t - split
    for idx, w in ((1, wp), (0, wm)):
        if gt > 0 and abs(w - omega_r) < guard * gt:
            raise ResonantPairError(idx, 0, w - omega_r, gt, guard)
    return 0.5 * gt**2 * (1.0 / (wp - omega_r) - 1.0 / (wm - omega_r))


# ---------------------------------------------------------------------------
# Dot-mediated (indirect) Majorana coupling
#
# Space: charge (even sublattice) x dot occupation x Majorana fermion, with the
# dot-occupied states carrying island charge N - 1, one electron fewer than the
# empty ones. The occupied branch is the island at offset n_g + 1 raised by eps.
# An electron tunnelling off the dot back into the island restores N; the
# left lead carries the flux phase, the right lead the branch half-shift.
# ---------------------------------------------------------------------------

_SIGMA_MINUS = np.array([[0, 1], [0, 0]], dtype=complex)  # empties the dot
_PX = np.array([[0, 1], [1, 0]], dtype=complex)
_PY = np.array([[0, -1j], [1j, 0]], dtype=complex)
_PZ = np.diag([1.0, -1.0]).astype(complex)
_P0 = np.diag([1.0, 0.0]).astype(complex)
_P1 = np.diag([0.0, 1.0]).astype(complex)
_I2 = np.eye(2, dtype=complex)


def build_indirect_hamiltonian(p, basis=None):
    """Full indirect-model Hamiltonian (angular GHz), dimension 4 * pair_dimension."""
    b = _basis(basis)
    q = p.base
    N = b.pair_charges.astype(float)
    D = b.pair_dimension
    hop = pair_shift(b, 1) + pair_shift(b, -1)
    H_empty = np.diag(q.E_C * (N - q.n_g) ** 2) - 0.5 * q.E_J * hop
    H_full = np.diag(q.E_C * (N - 1.0 - q.n_g) ** 2) - 0.5 * q.E_J * hop + p.eps_dot * np.eye(D)
    H = kron(H_empty, kron(_P0, _I2)) + kron(H_full, kron(_P1, _I2))
    A = branch_half_shift(b)
    T = 0.5 * (
        1j * p.t_L * np.exp(0.5j * q.phi_x) * kron(np.eye(D), kron(_SIGMA_MINUS, _PX))
        + p.t_R * kron(A.conj().T, kron(_SIGMA_MINUS, _PY))
    )
    H = H + T + T.conj().T
    return TWO_PI * H


def indirect_number_operator(basis=None):
    b = _basis(basis)
    N = b.pair_charges.astype(float)
    return kron(np.diag(N), kron(_P0, _I2)) + kron(np.diag(N - 1.0), kron(_P1, _I2))


def indirect_joint_parity(basis=None):
    """Conserved dot-Majorana parity Z_dot Z_majorana."""
    b = _basis(basis)
    return kron(np.eye(b.pair_dimension), kron(_PZ, _PZ))


def indirect_sector_eigs(p, basis=None):
    """{parity: (HermitianEigenSystem, N restricted to the sector)}.

    Majorana parity p corresponds to joint dot-Majorana parity -p.
    """
    b = _basis(basis)
    H = build_indirect_hamiltonian(p, b)
    N = indirect_number_operator(b)
    J = np.real(np.diag(indirect_joint_parity(b)))
    out = {}
    for s in (1, -1):
        idx = np.flatnonzero(J == -s)
        out[s] = (hermitian_eig(H[np.ix_(idx, idx)]), N[np.ix_(idx, idx)])
    return out


def indirect_ground_splitting(p, basis=None):
    """E_{g,-} - E_{g,+} of the indirect model in GHz."""
    s = indirect_sector_eigs(p, basis)
    return (s[-1][0].values[0] - s[1][0].values[0]) / TWO_PI


def direct_ground_splitting(p, basis=None):
    e = mt_sector_eigs(p, basis)
    return (e[-1].values[0] - e[1].values[0]) / TWO_PI


def match_indirect_tunneling(p, eps_dot, basis=None, t_bracket=(1e-3, None)):
    """Symmetric tunnelling t_L = t_R = t reproducing the direct-model ground splitting.

    Parameters
    ----------
    p : MTParams
        Direct-model parameters whose E_M sets the target splitting.
    eps_dot : float
        Dot level in GHz.

    Returns
    -------
    IndirectMTParams
    """
    target = direct_ground_splitting(p, basis)
    base = replace(p, E_M=0.0)

    def f(t):
        return indirect_ground_splitting(IndirectMTParams(base, eps_dot, t, t), basis) - target

    lo = t_bracket[0]
    hi = t_bracket[1] if t_bracket[1] is not None else max(1.0, 0.75 * abs(eps_dot))
    if f(lo) * f(hi) > 0:
        raise NumericError(f"splitting {target:.6g} GHz not bracketed by t in [{lo}, {hi}] GHz")
    t = brentq(f, lo, hi, xtol=1e-13, rtol=1e-13)
    return IndirectMTParams(base, eps_dot, t, t)


def chi_mt_indirect(p, lam, omega_r, basis=None, guard=DEFAULT_GUARD):
    """(chi_{g,-} - chi_{g,+})/2 for the indirect model."""
    b = _basis(basis)
    chi_g = {}
    for s, (eig, N_s) in indirect_sector_eigs(p, b).items():
        coup = coupling_matrix(eig, N_s, lam)
        chi_g[s] = dispersive_shifts(eig.values, coup, omega_r, guard).chi[0]
    return 0.5 * (chi_g[-1] - chi_g[1])
