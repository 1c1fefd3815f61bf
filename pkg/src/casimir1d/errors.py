"""Exception types shared across the package."""


class SingularEvaluationError(ValueError):
    """Damping kernel evaluated at (or numerically too close to) its pole."""


class ResonanceSingularityError(ValueError):
    """Undamped oscillator response requested exactly at the resonance frequency."""


class CavityResonanceError(ArithmeticError):
    """Round-trip denominator |1 - rL*rR*exp(-2sa)| fell below the resolvable floor."""


class RegionUnsupportedError(ValueError):
    """Field point lies inside a slab where the observable is not defined."""


class NonConvergenceError(RuntimeError):
    """Integral or sum failed to meet its tolerance within the panel/term budget."""

    def __init__(self, message, partial=None, error=None, panels=None):
        super().__init__(message)
        self.partial = partial
        self.error = error
        self.panels = panels


class NaNIntegrandError(RuntimeError):
    """Integrand returned a non-finite value; records the offending abscissa."""

    def __init__(self, abscissa):
        super().__init__("integrand returned a non-finite value at x = %r" % (abscissa,))
        self.abscissa = abscissa


class DeltaStateWeightError(ValueError):
    """The delta-band squeezed state has no pointwise spectral weight."""
