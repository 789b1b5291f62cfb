"""Unit conversions.

Internally every energy is an angular frequency in rad/ns. Parameters enter and
leave the package as linear frequencies in GHz (E/h) and times in microseconds.
"""

import math

TWO_PI = 2.0 * math.pi


def to_angular(f_ghz):
    """Linear GHz -> angular rad/ns."""
    return TWO_PI * f_ghz


def to_ghz(w):
    """Angular rad/ns -> linear GHz."""
    return w / TWO_PI


def to_mhz(w):
    """Angular rad/ns -> linear MHz."""
    return 1e3 * w / TWO_PI


def us_to_ns(tau_us):
    return 1e3 * tau_us
