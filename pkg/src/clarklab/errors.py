"""Exception types shared across the package."""


class IntegratorEscapeError(RuntimeError):
    """A flow trajectory left the closed unit disc beyond the allowed slack.

    Signals an invalid generator (positive real part pushed outward) or an
    integration tolerance failure; trajectories of genuine semigroup
    generators stay inside the disc.
    """


class InconsistentLimitsError(RuntimeError):
    """Two independent estimates of the same boundary limit disagree.

    Raised instead of silently choosing one of the estimates.
    """


class NoBoundaryFixedPointError(RuntimeError):
    """Radial limits at the requested boundary point do not converge to a
    regular fixed-point configuration."""


class DecompositionError(RuntimeError):
    """A generator decomposition produced Herglotz data with negative real
    part, so the input has no valid regular fixed point at the target."""
