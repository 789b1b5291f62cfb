"""Kernel backend selection.

The compiled ``_ckernels`` extension is used when it imports; otherwise the
numpy implementation in ``_pykernels`` takes over. ``set_backend`` switches at
runtime (tests and the benchmark use it to compare both).
"""

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

_BACKENDS = {"python": _pykernels}
if _ckernels is not None:
    _BACKENDS["compiled"] = _ckernels

_active = _BACKENDS.get("compiled", _pykernels)


def available_backends():
    return sorted(_BACKENDS)


def backend_name():
    return "compiled" if _active is _ckernels and _ckernels is not None else "python"


def set_backend(name):
    """Select ``"compiled"`` or ``"python"``; returns the previous name."""
    global _active
    if name not in _BACKENDS:
        raise ValueError(f"backend {name!r} not available; have {available_backends()}")
    prev = backend_name()
    _active = _BACKENDS[name]
    return prev


def get_backend(name):
    return _BACKENDS[name]


def sw_sums(w, g, omega_r, guard, zero_tol):
    return _active.sw_sums(w, g, omega_r, guard, zero_tol)


def erfc(x):
    return _active.erfc(x)
