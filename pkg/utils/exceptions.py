# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------


class NomaSimError(Exception):
    """Base class of every error raised by the simulator packages."""


class ConfigError(NomaSimError, ValueError):
    """Invalid option value or malformed configuration file."""


class GeometryError(NomaSimError, ValueError):
    """A position or distance outside the cell annulus."""


class DecisionSpaceError(NomaSimError):
    """The scheduler's candidate space exceeds the configured guard."""


class ModelError(NomaSimError, ValueError):
    """QoE model fitting, prediction or dump parsing failed."""
