"""Pure-Python/numpy implementations of the hot kernels.

Same signatures and results as the compiled ``_ckernels`` module; used when the
extension is not built.
"""

import math

import numpy as np

_SQRT_PI = math.sqrt(math.pi)
_SERIES_CUTOFF = 2.0
_CF_MAX_TERMS = 5000


def sw_sums(w, g, omega_r, guard, zero_tol):
    """Second-order Schrieffer-Wolff pulls.

    Parameters
    ----------
    w : (L,) float array
        Level frequencies.
    g : (L, L) complex array
        Couplings g_{l,l'}.
    omega_r : float
        Resonator frequency.
    guard : float
        Minimum allowed |Delta_{l,l'}| / |g_{l,l'}|.
    zero_tol : float
        Couplings with |g| <= zero_tol are treated as absent.

    Returns
    -------
    chi, eta : (L,) float arrays
    margin : float
        min |Delta|/|g| over contributing pairs (inf if there are none).
    bad : tuple or None
        (l, l', Delta, |g|) of the first pair violating the guard.
    """
    w = np.asarray(w, dtype=float)
    g = np.asarray(g, dtype=complex)
    delta = w[:, None] - w[None, :] - omega_r
    mag = np.abs(g)
    active = mag > zero_tol
    if not active.any():
        L = len(w)
        return np.zeros(L), np.zeros(L), math.inf, None
    ratio = np.full(delta.shape, math.inf)
    ratio[active] = np.abs(delta[active]) / mag[active]
    violating = ratio < guard
    if violating.any():
        l, lp = np.argwhere(violating)[0]
        return None, None, float(ratio.min()), (int(l), int(lp), float(delta[l, lp]), float(mag[l, lp]))
    x = np.zeros(delta.shape)
    x[active] = mag[active] ** 2 / delta[active]
    eta = x.sum(axis=1)
    chi = eta - x.sum(axis=0)
    return chi, eta, float(ratio.min()), None


def _erfc_scalar(x):
    if x != x:
        return math.nan
    if x < 0.0:
        return 2.0 - _erfc_scalar(-x)
    if x == 0.0:
        return 1.0  # the series below would never meet its stopping test
    if x < _SERIES_CUTOFF:
        # erf(x) = 2/sqrt(pi) e^{-x^2} sum_n (2x^2)^n x / (1*3*...*(2n+1)); all terms positive
        x2 = x * x
        term = x
        total = x
        n = 0
        while True:
            n += 1
            term *= 2.0 * x2 / (2 * n + 1)
            total += term
            if term < 1e-17 * total:
                break
        return 1.0 - 2.0 / _SQRT_PI * math.exp(-x2) * total
    if x > 27.3:
        return 0.0
    # continued fraction erfc(x) = e^{-x^2}/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...))))
    # evaluated with the modified Lentz algorithm
    tiny = 1e-300
    f = x
    C = x
    D = 0.0
    for j in range(1, _CF_MAX_TERMS):
        a = 0.5 * j
        D = x + a * D
        D = 1.0 / (D if D != 0.0 else tiny)
        C = x + a / C
        if C == 0.0:
            C = tiny
        step = C * D
        f *= step
        if abs(step - 1.0) < 1e-16:
            break
    return math.exp(-x * x) / (_SQRT_PI * f)


def erfc(x):
    """Complementary error function, scalar or array, ~1e-14 relative."""
    if np.ndim(x) == 0:
        return _erfc_scalar(float(x))
    arr = np.asarray(x, dtype=float)
    return np.vectorize(_erfc_scalar, otypes=[float])(arr)
