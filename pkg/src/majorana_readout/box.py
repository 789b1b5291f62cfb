"""Majorana box qubit: an island with two Majoranas tunnel-coupled to one dot level.

Total charge n (island plus dot) is conserved, so the Hamiltonian splits into
4x4 blocks on {|0_n>, |1_n>} x {m = 0, 1}: |0_n> has the dot empty and island
charge n, |1_n> has the dot filled and island charge n - 1, and m is the
occupation of the fermion built from the two Majoranas. Tunnelling flips the
dot and m together, so each block splits again into two 2x2 sub-blocks:

    sub-block "+" : {|0_n, 0>, |1_n, 1>}, splitting f_-
    sub-block "-" : {|0_n, 1>, |1_n, 0>}, splitting f_+

with f_+- = sqrt(delta^2 + |t_L e^{i phi_x/2} +- t_R|^2) and
delta(n) = E_tot + eps - 2 E_tot (n - n_g). The logical states are the lower
dressed state of each sub-block.
"""

import math
from dataclasses import dataclass, replace

import numpy as np

from .engine import DEFAULT_GUARD, dispersive_shifts
from .errors import DomainError, ResonantPairError
from .operators import hermitian_eig
from .units import TWO_PI

# basis order inside a block: (dot, m) = (0,0), (0,1), (1,0), (1,1)
SUB_PLUS = (0, 3)
SUB_MINUS = (1, 2)


@dataclass(frozen=True)
class MBParams:
    """Box-qubit parameters (GHz, radians)."""

    E_tot: float
    eps_dot: float
    n_g: float = 0.0
    t_L: float = 0.0
    t_R: float = 0.0
    phi_x: float = 0.0

    def __post_init__(self):
        if not self.E_tot > 0:
            raise DomainError(f"E_tot must be positive, got {self.E_tot}")
        if self.t_L < 0 or self.t_R < 0:
            raise DomainError("tunnel amplitudes must be nonnegative")


@dataclass(frozen=True)
class BlockSolution:
    """Closed-form diagonalization of block n; energies in GHz."""

    n: int
    delta_n: float
    f_plus: float
    f_minus: float
    eps_c: float
    eps_m: float
    E_n: float
    alpha_plus_mag: float
    alpha_minus_mag: float

    @property
    def energies(self):
        E = self.E_n
        return np.array([E, E + self.eps_m, E + self.eps_c, E + self.eps_c + self.eps_m])


@dataclass(frozen=True)
class BoxCouplings:
    """Dressed-basis couplings in angular GHz."""

    g_c: float
    g_m: float
    g_plus: complex
    g_minus: complex


def _tunnel_sums(p):
    """t_L e^{i phi_x/2} +- t_R."""
    tl = p.t_L * np.exp(0.5j * p.phi_x)
    return tl + p.t_R, tl - p.t_R


def delta_n(p, n):
    return p.E_tot + p.eps_dot - 2 * p.E_tot * (n - p.n_g)


def block_hamiltonian(p, n):
    """4x4 block of fixed total charge n (angular GHz)."""
    a = p.E_tot * (n - p.n_g) ** 2
    b = p.E_tot * (n - 1 - p.n_g) ** 2 + p.eps_dot
    H = np.diag([a, a, b, b]).astype(complex)
    X = np.array([[0, 1], [1, 0]], dtype=complex)
    Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
    lower = np.array([[0, 1], [0, 0]], dtype=complex)  # |0_n><1_n|: electron leaves the dot
    T = 0.5 * np.kron(lower, 1j * p.t_L * np.exp(0.5j * p.phi_x) * X + p.t_R * Y)
    H += T + T.conj().T
    return TWO_PI * H


def block_charge_operator(n):
    """Island charge inside block n: n on |0_n>, n - 1 on |1_n>."""
    return np.diag([n, n, n - 1, n - 1]).astype(complex)


def block_solution(p, n):
    d = delta_n(p, n)
    s_plus, s_minus = _tunnel_sums(p)
    f_plus = math.sqrt(d * d + abs(s_plus) ** 2)
    f_minus = math.sqrt(d * d + abs(s_minus) ** 2)
    sgn = 1.0 if d >= 0 else -1.0
    eps_c = 0.5 * sgn * (f_plus + f_minus)
    eps_m = 0.5 * sgn * (f_plus - f_minus)
    E = p.E_tot * (n - p.n_g) ** 2 + 0.5 * (d - eps_c - eps_m)
    return BlockSolution(
        n=int(n),
        delta_n=d,
        f_plus=f_plus,
        f_minus=f_minus,
        eps_c=eps_c,
        eps_m=eps_m,
        E_n=E,
        alpha_plus_mag=0.5 * math.atan2(abs(s_plus), d),
        alpha_minus_mag=0.5 * math.atan2(abs(s_minus), d),
    )


def box_couplings(p, n, lam, geometry="island"):
    """g_c, g_m, g_+ and g_- for resonator coupling to the island (or the dot).

    The dot-coupled geometry differs only by lambda -> -lambda.
    """
    if geometry not in ("island", "dot"):
        raise DomainError(f"geometry must be 'island' or 'dot', got {geometry!r}")
    lam = lam if geometry == "island" else -lam
    sol = block_solution(p, n)
    d = sol.delta_n
    s_plus, s_minus = _tunnel_sums(p)

    def dressed(s, f):
        if f > 0:
            return -0.5 * lam * 1j * s / f
        return -0.5 * lam * 1j  # delta = 0 and s = 0: the limit has unit modulus

    rp = d / sol.f_plus if sol.f_plus > 0 else 0.0
    rm = d / sol.f_minus if sol.f_minus > 0 else 0.0
    return BoxCouplings(
        g_c=-0.5 * lam * (rp + rm),
        g_m=-0.5 * lam * (rp - rm),
        g_plus=complex(dressed(s_plus, sol.f_plus)),
        g_minus=complex(dressed(s_minus, sol.f_minus)),
    )


def omega_r_box(p, lam, delta_over_g, n=0):
    """Resonator frequency (angular) with Delta = f_+ - omega_r = delta_over_g * |g_+|."""
    sol = block_solution(p, n)
    gp = abs(box_couplings(p, n, lam).g_plus)
    return TWO_PI * sol.f_plus - delta_over_g * gp


def chi_mb_analytic(p, lam, omega_r, n=0, guard=DEFAULT_GUARD):
    """Rotating-wave estimate 0.5 [|g_+|^2/(f_+ - omega_r) - |g_-|^2/(f_- - omega_r)]."""
    sol = block_solution(p, n)
    c = box_couplings(p, n, lam)
    out = 0.0
    for sign, f, g, idx in ((1, sol.f_plus, c.g_plus, 1), (-1, sol.f_minus, c.g_minus, 0)):
        g2 = abs(g) ** 2
        if g2 == 0:
            continue
        den = TWO_PI * f - omega_r
        if abs(den) < guard * abs(g):
            raise ResonantPairError(idx, 0, den, abs(g), guard)
        out += sign * 0.5 * g2 / den
    return out


def _sub_block_eigs(p, n):
    """Eigenpairs of each 2x2 sub-block embedded in the 4-dim block space."""
    H = block_hamiltonian(p, n)
    out = {}
    for label, idx in (("+", SUB_PLUS), ("-", SUB_MINUS)):
        idx = list(idx)
        eig = hermitian_eig(H[np.ix_(idx, idx)])
        V = np.zeros((4, 2), dtype=complex)
        V[idx, :] = eig.vectors
        out[label] = (eig.values, V)
    return out


def dressed_block(p, n):
    """Block eigenvalues (ascending, angular) with eigenvectors and parity labels.

    Each eigenvector lives in exactly one sub-block; the label says which.
    """
    subs = _sub_block_eigs(p, n)
    vals, vecs, labels, rungs = [], [], [], []
    for label in ("+", "-"):
        w, V = subs[label]
        for k in range(2):
            vals.append(w[k])
            vecs.append(V[:, k])
            labels.append(label)
            rungs.append(k)
    order = np.argsort(vals, kind="stable")
    return (
        np.asarray(vals)[order],
        np.column_stack(vecs)[:, order],
        [labels[i] for i in order],
        [rungs[i] for i in order],
    )


def chi_mb_numeric(p, lam, omega_r, n=0, geometry="island", guard=DEFAULT_GUARD, with_margin=False):
    """(chi_+ - chi_-)/2 from the exact 4x4 block and the full Schrieffer-Wolff sum.

    ``with_margin`` also returns the smallest |Delta|/|g| that entered the sum.
    """
    if geometry not in ("island", "dot"):
        raise DomainError(f"geometry must be 'island' or 'dot', got {geometry!r}")
    w, V, labels, rungs = dressed_block(p, n)
    if geometry == "island":
        op = block_charge_operator(n)
    else:
        op = np.diag([0, 0, 1, 1]).astype(complex)
    g = 1j * lam * (V.conj().T @ op @ V)
    # N conserves the sub-block decomposition; remove rounding-level cross terms
    same = np.array([[a == b for b in labels] for a in labels])
    g = np.where(same, g, 0.0)
    res = dispersive_shifts(w, g, omega_r, guard)
    plus = next(i for i, (lb, r) in enumerate(zip(labels, rungs)) if lb == "+" and r == 0)
    minus = next(i for i, (lb, r) in enumerate(zip(labels, rungs)) if lb == "-" and r == 0)
    chi = float(0.5 * (res.chi[plus] - res.chi[minus]))
    return (chi, res.resonance_margin) if with_margin else chi


def mb_spectrum_vs_ng(p, ng_grid, n_window):
    """All block energies for n in ``n_window`` versus n_g.

    Returns (n_g, n, parity_label, level, frequency in GHz) rows, measured from
    the lowest energy found at each n_g.
    """
    rows = []
    window = list(n_window)
    for ng in ng_grid:
        q = replace(p, n_g=float(ng))
        per_n = {n: dressed_block(q, n) for n in window}
        ground = min(v[0][0] for v in per_n.values())
        for n in window:
            w, _, labels, _ = per_n[n]
            for lvl, (e, lb) in enumerate(zip(w, labels)):
                rows.append((float(ng), n, lb, lvl, (e - ground) / TWO_PI))
    return rows
