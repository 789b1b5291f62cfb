"""Charge-basis operators, tensor products and a dense Hermitian eigensolver.

Charge states are labelled by the electron number N = -n_max ... n_max in
ascending order. ``charge_shift(b, m)`` is the finite matrix of the operator
that adds ``m`` electrons, so e^{i phi} (one Cooper pair) is ``m = 2`` and
e^{i phi / 2} (one electron) is ``m = 1``.

The transmon builders work on the even-charge sublattice (N = 2k); helpers for
that lattice live here as well (``pair_*`` and ``branch_half_shift``).
"""

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, NumericError

HERMITIAN_RTOL = 1e-12
EIG_RESIDUAL_RTOL = 1e-10


@dataclass(frozen=True)
class ChargeBasis:
    """Truncated electron-number basis N = -n_max ... n_max."""

    n_max: int = 30

    def __post_init__(self):
        if int(self.n_max) != self.n_max or self.n_max < 0:
            raise DomainError(f"n_max must be a nonnegative integer, got {self.n_max!r}")

    @property
    def dimension(self):
        return 2 * self.n_max + 1

    @property
    def charges(self):
        return np.arange(-self.n_max, self.n_max + 1)

    def index(self, N):
        if abs(N) > self.n_max:
            raise DomainError(f"charge {N} outside basis with n_max={self.n_max}")
        return int(N) + self.n_max

    # even-charge (Cooper-pair) sublattice
    @property
    def pair_cutoff(self):
        return self.n_max // 2

    @property
    def pair_dimension(self):
        return 2 * self.pair_cutoff + 1

    @property
    def pair_charges(self):
        """Electron numbers N = 2k of the even sublattice, ascending."""
        k = np.arange(-self.pair_cutoff, self.pair_cutoff + 1)
        return 2 * k


def charge_shift(basis, m):
    """Matrix of |N> -> |N+m> with rows/columns falling off the edge truncated."""
    m = int(m)
    if abs(m) > 2 * basis.n_max:
        raise DomainError(f"shift exceeds basis: |m|={abs(m)} > 2*n_max={2 * basis.n_max}")
    return np.eye(basis.dimension, k=-m, dtype=complex)


def number_operator(basis):
    return np.diag(basis.charges.astype(float)).astype(complex)


def pair_shift(basis, m):
    """Add ``m`` Cooper pairs on the even sublattice (e^{i m phi})."""
    m = int(m)
    d = basis.pair_dimension
    if abs(m) > d - 1:
        raise DomainError(f"shift exceeds basis: |m|={abs(m)} pairs > {d - 1}")
    return np.eye(d, k=-m, dtype=complex)


def pair_number_operator(basis):
    """Electron number N = 2k on the even sublattice."""
    return np.diag(basis.pair_charges.astype(float)).astype(complex)


def branch_half_shift(basis):
    """e^{i phi/2} on the even sublattice with phi confined to [-pi, pi).

    The half-shift does not map 2pi-periodic functions to themselves. Here it is
    compressed onto them: <k|e^{i phi/2}|k'> = sinc(k' - k + 1/2), the Fourier
    coefficients of e^{i phi/2} on one phase branch.
    """
    k = np.arange(-basis.pair_cutoff, basis.pair_cutoff + 1)
    d = k[None, :] - k[:, None] + 0.5
    return (np.sin(np.pi * d) / (np.pi * d)).astype(complex)


def kron(A, B):
    """Tensor product, A index major."""
    return np.kron(np.asarray(A), np.asarray(B))


def hermiticity_defect(H):
    H = np.asarray(H)
    return float(np.max(np.abs(H - H.conj().T))) if H.size else 0.0


def assert_hermitian(H, rtol=HERMITIAN_RTOL):
    H = np.asarray(H)
    if H.ndim != 2 or H.shape[0] != H.shape[1]:
        raise DomainError(f"expected a square matrix, got shape {H.shape}")
    scale = max(1.0, float(np.max(np.abs(H))) if H.size else 0.0)
    defect = hermiticity_defect(H)
    if defect > rtol * scale:
        raise DomainError(f"matrix is not Hermitian: max|H - H^dag| = {defect:.3e}")


@dataclass(frozen=True)
class HermitianEigenSystem:
    """Ascending eigenvalues and matching column eigenvectors."""

    values: np.ndarray
    vectors: np.ndarray

    def __len__(self):
        return len(self.values)


def fix_phases(V):
    """Rotate each column so its largest-magnitude entry is real and positive."""
    V = np.array(V, dtype=complex)
    if V.size == 0:
        return V
    idx = np.argmax(np.abs(V), axis=0)
    pivots = V[idx, np.arange(V.shape[1])]
    V = V * (np.abs(pivots) / pivots)[None, :]
    cols = np.arange(V.shape[1])
    V[idx, cols] = V[idx, cols].real  # drop the rounding-level imaginary part
    return V


def hermitian_eig(H):
    """Diagonalize a dense Hermitian matrix.

    Returns eigenvalues in ascending order and eigenvectors with a fixed global
    phase per column (largest component real positive), so repeated runs give
    identical output.
    """
    H = np.asarray(H)
    if H.size and not np.all(np.isfinite(H)):
        raise DomainError("matrix has non-finite entries")
    assert_hermitian(H)
    Hc = H.astype(complex)
    try:
        w, V = np.linalg.eigh(Hc)
    except np.linalg.LinAlgError as exc:
        raise NumericError(f"eigensolver did not converge: {exc}") from exc
    V = fix_phases(V)
    norm = max(float(np.max(np.abs(w))) if w.size else 0.0, np.finfo(float).tiny)
    resid = np.linalg.norm(Hc @ V - V * w[None, :], axis=0)
    worst = float(resid.max()) if resid.size else 0.0
    if worst > EIG_RESIDUAL_RTOL * norm:
        raise NumericError(f"eigenvector residual {worst:.3e} exceeds {EIG_RESIDUAL_RTOL}*||H||")
    return HermitianEigenSystem(values=w, vectors=V)
