from .config import Config, ConfigError, OptimizerDefaults, Tolerances

__all__ = [
    'Config',
    'ConfigError',
    'OptimizerDefaults',
    'Tolerances',
]
