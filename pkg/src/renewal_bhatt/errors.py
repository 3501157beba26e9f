"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of a function."""


class DegeneratePairError(ValueError):
    """The two classes (nearly) coincide, so no decaying bound exists."""


class ConfigError(ValueError):
    """Invalid experiment or command-line configuration."""
