"""Exception types shared across the package."""


class DomainError(ValueError):
    """Invalid input: wrong shape, out-of-range parameter, bad configuration."""


class NumericError(ArithmeticError):
    """A numerical procedure failed to converge or produced an unusable result."""


class ResonantPairError(NumericError):
    """A transition collided with the resonator frequency.

    Attributes
    ----------
    l, lp : int
        Level indices of the offending pair.
    delta : float
        Detuning omega_l - omega_lp - omega_r (angular GHz).
    g : float
        Coupling magnitude |g_{l,lp}| (angular GHz).
    """

    def __init__(self, l, lp, delta, g, guard):
        self.l = int(l)
        self.lp = int(lp)
        self.delta = float(delta)
        self.g = float(g)
        self.guard = float(guard)
        super().__init__(
            f"resonant pair (l={self.l}, l'={self.lp}): |Delta|={abs(self.delta):.3e} "
            f"< {self.guard:g}*|g| with |g|={self.g:.3e} (angular GHz)"
        )
