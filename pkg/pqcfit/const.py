from .messages import SummaryConfig

# Run events.
EVENT_MODULE_INIT = 'module_init'
EVENT_FAILED = 'failed'
EVENT_DONE = 'done'

# Ledger measurements.
MEASUREMENT_BARREN_VARIANCE = 'barren.variance'

# Summary configuration.
SUMMARY_CAPABILITY_LOSS = SummaryConfig('loss', float)
SUMMARY_CAPABILITY_EPOCHS = SummaryConfig('epochs', int)

# Exit codes.
EXIT_OK = 0
EXIT_CONFIG_ERROR = 2
EXIT_RUNTIME_ERROR = 3


class PqcfitError(Exception):
    """Base class for all pqcfit errors."""


class InvalidGateError(PqcfitError):
    """Gate kind, arity or angle do not match."""


class BindingError(PqcfitError):
    """Parameter binding cannot be resolved."""


class SimulationError(PqcfitError):
    """Simulation request outside supported bounds."""


class ConfigError(PqcfitError):
    """Experiment configuration is invalid."""


class UnsupportedStructureError(ConfigError):
    """Requested ansatz structure is not implemented."""
