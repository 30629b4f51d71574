"""Exception hierarchy shared by all numerical layers.

Exit-code mapping used by the CLI: DomainError, ResonanceError and PoleError
are "invalid input" failures (exit 2), NonconvergenceError is exit 3.
"""


class QPTauError(Exception):
    """Base class for all library errors."""


class DomainError(QPTauError):
    """Argument outside the validity domain of a series or product."""


class ResonanceError(DomainError):
    """A denominator 1 - q**e is closer to zero than the resonance guard.

    Carries the offending exponent so callers can report which combination
    of sigma, mode index and charge collided.
    """

    def __init__(self, exponent, value, tol):
        self.exponent = exponent
        self.value = value
        self.tol = tol
        super().__init__(
            f"resonant denominator 1 - q**({exponent}) = {value:.3e} "
            f"(guard tolerance {tol:.1e})"
        )


class PoleError(DomainError):
    """Evaluation point sits on (or numerically too close to) a pole."""


class NonconvergenceError(QPTauError):
    """A truncated series or iteration failed to reach its tolerance."""
