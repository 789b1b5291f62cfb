"""Second-order Schrieffer-Wolff dispersive shifts for a multilevel atom.

For an atom with levels omega_l coupled to one resonator mode through
g_{l,l'} = i lambda <l|N|l'>, the resonator pull conditioned on level l is

    chi_l = sum_{l'} chi_{l,l'} - chi_{l',l},   eta_l = sum_{l'} chi_{l,l'},
    chi_{l,l'} = |g_{l,l'}|^2 / (omega_l - omega_{l'} - omega_r).

No rotating-wave approximation is made: every pair, including the
counter-rotating ones, enters the double sum.
"""

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .errors import DomainError, ResonantPairError

DEFAULT_GUARD = 1e-3
# couplings below this fraction of the largest one are treated as exact zeros
ZERO_COUPLING_RTOL = 1e-13


@dataclass(frozen=True)
class LevelSpectrum:
    """Ascending level frequencies (angular GHz) with optional labels."""

    frequencies: np.ndarray
    labels: tuple = field(default=())

    def __post_init__(self):
        w = np.asarray(self.frequencies, dtype=float)
        if w.ndim != 1 or len(w) < 2:
            raise DomainError("a level spectrum needs at least two levels")
        if np.any(np.diff(w) < 0):
            raise DomainError("level frequencies must be ascending")
        object.__setattr__(self, "frequencies", w)


@dataclass(frozen=True)
class LevelCouplings:
    """g_{l,l'} = i lambda <l|N|l'> in angular GHz."""

    g: np.ndarray


@dataclass(frozen=True)
class DispersiveResult:
    chi: np.ndarray
    eta: np.ndarray
    resonance_margin: float


def coupling_matrix(eig, N_op, lam):
    """Transition amplitudes g = i lambda V^dag N V in the eigenbasis ``eig``."""
    V = eig.vectors
    N_op = np.asarray(N_op)
    if N_op.ndim != 2 or N_op.shape != (V.shape[0], V.shape[0]):
        raise DomainError(f"operator shape {N_op.shape} does not match eigensystem {V.shape}")
    return LevelCouplings(g=1j * lam * (V.conj().T @ N_op @ V))


def dispersive_shifts(spec, coup, omega_r, guard=DEFAULT_GUARD):
    """Per-level pulls chi_l and Lamb corrections eta_l.

    Raises
    ------
    ResonantPairError
        If some coupled pair has |Delta| < guard * |g|.
    """
    w = spec.frequencies if isinstance(spec, LevelSpectrum) else np.asarray(spec, dtype=float)
    g = coup.g if isinstance(coup, LevelCouplings) else np.asarray(coup)
    if g.shape != (len(w), len(w)):
        raise DomainError(f"coupling matrix shape {g.shape} does not match {len(w)} levels")
    gmax = float(np.max(np.abs(g))) if g.size else 0.0
    zero_tol = ZERO_COUPLING_RTOL * gmax
    chi, eta, margin, bad = _kernels.sw_sums(w, g, float(omega_r), float(guard), zero_tol)
    if bad is not None:
        raise ResonantPairError(*bad, guard=guard)
    return DispersiveResult(chi=np.asarray(chi), eta=np.asarray(eta), resonance_margin=margin)


def qubit_chi(res, l1, l0):
    """Logical-pair shift (chi_{l1} - chi_{l0}) / 2."""
    n = len(res.chi)
    for l in (l1, l0):
        if not 0 <= l < n:
            raise DomainError(f"level index {l} out of range 0..{n - 1}")
    if l1 == l0:
        raise DomainError("qubit levels must differ")
    return 0.5 * (res.chi[l1] - res.chi[l0])


def two_level_chi(omega_q, g0, omega_r):
    """Closed-form chi_1 - chi_0 for a two-level atom, counter-rotating terms included."""
    delta = omega_q - omega_r
    return 2 * g0**2 / delta + 2 * g0**2 / (omega_q + omega_r)
