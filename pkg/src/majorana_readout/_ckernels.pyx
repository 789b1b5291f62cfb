# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels: Schrieffer-Wolff double sum and erfc.

Mirrors ``_pykernels`` exactly; see that module for the documentation.
"""

import numpy as np
cimport numpy as cnp
from libc.math cimport exp, sqrt, fabs, INFINITY, NAN, isnan

cnp.import_array()

cdef double SQRT_PI = 1.7724538509055159
cdef double SERIES_CUTOFF = 2.0
cdef int CF_MAX_TERMS = 5000


def sw_sums(w, g, double omega_r, double guard, double zero_tol):
    cdef cnp.ndarray[cnp.float64_t, ndim=1] wa = np.ascontiguousarray(w, dtype=np.float64)
    cdef cnp.ndarray[cnp.complex128_t, ndim=2] ga = np.ascontiguousarray(g, dtype=np.complex128)
    cdef Py_ssize_t L = wa.shape[0]
    cdef Py_ssize_t i, j
    cdef double d, mag2, mag, ratio
    cdef double margin = INFINITY
    cdef double zero2 = zero_tol * zero_tol
    cdef double complex gij
    cdef cnp.ndarray[cnp.float64_t, ndim=1] eta = np.zeros(L)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] col = np.zeros(L)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] chi = np.zeros(L)
    cdef Py_ssize_t bad_i = -1, bad_j = -1
    cdef double bad_d = 0.0, bad_g = 0.0
    cdef double x

    # first pass: guard and margin (row-major scan keeps the reported pair stable)
    for i in range(L):
        for j in range(L):
            gij = ga[i, j]
            mag2 = gij.real * gij.real + gij.imag * gij.imag
            if mag2 <= zero2:
                continue
            mag = sqrt(mag2)
            d = wa[i] - wa[j] - omega_r
            ratio = fabs(d) / mag
            if ratio < margin:
                margin = ratio
            if ratio < guard and bad_i < 0:
                bad_i = i
                bad_j = j
                bad_d = d
                bad_g = mag
    if bad_i >= 0:
        return None, None, margin, (int(bad_i), int(bad_j), bad_d, bad_g)

    for i in range(L):
        for j in range(L):
            gij = ga[i, j]
            mag2 = gij.real * gij.real + gij.imag * gij.imag
            if mag2 <= zero2:
                continue
            x = mag2 / (wa[i] - wa[j] - omega_r)
            eta[i] += x
            col[j] += x
    for i in range(L):
        chi[i] = eta[i] - col[i]
    return chi, eta, margin, None


cdef double _erfc(double x) nogil:
    cdef double x2, term, total, a, C, D, f, step
    cdef double tiny = 1e-300
    cdef int n, j
    if isnan(x):
        return NAN
    if x < 0.0:
        return 2.0 - _erfc(-x)
    if x == 0.0:
        return 1.0
    if x < SERIES_CUTOFF:
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
        return 1.0 - 2.0 / SQRT_PI * exp(-x2) * total
    if x > 27.3:
        return 0.0
    f = x
    C = x
    D = 0.0
    for j in range(1, CF_MAX_TERMS):
        a = 0.5 * j
        D = x + a * D
        if D == 0.0:
            D = tiny
        D = 1.0 / D
        C = x + a / C
        if C == 0.0:
            C = tiny
        step = C * D
        f *= step
        if fabs(step - 1.0) < 1e-16:
            break
    return exp(-x * x) / (SQRT_PI * f)


def erfc(x):
    if np.ndim(x) == 0:
        return _erfc(float(x))
    cdef cnp.ndarray[cnp.float64_t, ndim=1] flat = np.ascontiguousarray(x, dtype=np.float64).ravel()
    cdef cnp.ndarray[cnp.float64_t, ndim=1] out = np.empty_like(flat)
    cdef Py_ssize_t i
    for i in range(flat.shape[0]):
        out[i] = _erfc(flat[i])
    return out.reshape(np.shape(x))
