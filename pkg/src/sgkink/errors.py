"""Exception hierarchy for the stability toolkit."""


class SGKinkError(Exception):
    """Base class for all errors raised by :mod:`sgkink`."""


class DegenerateSpeed(SGKinkError, ValueError):
    """Wave speed too close to the luminal value ``c = 1``."""


class DegenerateProfilePoint(SGKinkError, ValueError):
    """Profile evaluated at a point where ``cos v + 1`` vanishes numerically."""


class DegenerateSplitting(SGKinkError, ValueError):
    """Asymptotic eigenvalues (or exponents) coincide or sit on a branch cut."""


class DegenerateLambda(SGKinkError, ValueError):
    """Spectral parameter for which the real-axis obstruction vanishes."""


class BadAsymptotics(SGKinkError):
    """Asymptotic data unusable for seeding a trajectory."""


class IntegratorFailure(SGKinkError, RuntimeError):
    """ODE integration did not reach the end of the compactified interval."""


class IrregularCrossing(SGKinkError):
    """A refined crossing whose crossing form is numerically zero."""


class ChartThrash(SGKinkError, RuntimeError):
    """Too many chart switches while integrating a Riccati trajectory."""


class ConfigError(SGKinkError, ValueError):
    """Invalid analysis configuration."""
