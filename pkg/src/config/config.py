import logging
import os
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Optional

import yaml

logger = logging.getLogger(__name__)

DEFAULTS_PATH = Path(__file__).with_name('defaults.yaml')


class ConfigError(ValueError):
    pass


@dataclass
class Tolerances:
    degeneracy: float = 1e-9
    rank: float = 1e-9
    commutator: float = 1e-9


@dataclass
class OptimizerDefaults:
    seed: int = 0
    restarts: dict[str, int] = field(default_factory=lambda: {
        'two_qubit': 20,
        'two_qutrit': 50,
        'three_qubit': 100,
        'fermion': 20,
        'bruteforce': 200,
    })
    grid_step: float = 0.00785398163

    def restarts_for(self, kind: str) -> int:
        return int(self.restarts.get(kind, 20))


def _build(cls, data: Optional[dict], section: str):
    data = data or {}
    if not isinstance(data, dict):
        raise ConfigError(f"Section '{section}' must be a mapping")
    known = {f.name for f in fields(cls)}
    for key in data:
        if key not in known:
            logger.warning("Ignoring unknown key '%s' in section '%s'", key, section)
    obj = cls()
    for key in known & set(data):
        default = getattr(obj, key)
        value = data[key]
        try:
            if isinstance(default, dict):
                merged = dict(default)
                merged.update({str(k): int(v) for k, v in value.items()})
                value = merged
            else:
                value = type(default)(value)
        except (TypeError, ValueError, AttributeError) as e:
            raise ConfigError(f"Invalid value for '{section}.{key}': {value!r}") from e
        setattr(obj, key, value)
    return obj


class Config:
    def __init__(self, defaults_path: Optional[str] = None):
        path = defaults_path or os.getenv('QINFO_DEFAULTS') or DEFAULTS_PATH
        data = self._load_defaults(Path(path))

        self.tolerances = _build(Tolerances, data.get('tolerances'), 'tolerances')
        self.optimizer = _build(OptimizerDefaults, data.get('optimizer'), 'optimizer')
        self.log_level = os.getenv('QINFO_LOG_LEVEL', 'INFO').upper()

        threads = os.getenv('QINFO_THREADS', data.get('workers', 1))
        try:
            self.threads = int(threads)
        except (TypeError, ValueError):
            raise ConfigError(f"QINFO_THREADS must be an integer, got {threads!r}")

        if self.threads < 1:
            raise ConfigError(f"Thread count must be >= 1, got {self.threads}")
        if not isinstance(logging.getLevelName(self.log_level), int):
            raise ConfigError(f"Unknown log level '{self.log_level}'")

    def _load_defaults(self, path: Path) -> dict:
        try:
            with open(path, 'r', encoding='utf-8') as f:
                data = yaml.safe_load(f)
        except FileNotFoundError:
            raise ConfigError(f"Defaults file not found: {path}")
        except yaml.YAMLError as e:
            raise ConfigError(f"YAML parsing error in {path}: {e}")

        if not data:
            logger.warning("Empty defaults file %s, using built-in values", path)
            return {}
        if not isinstance(data, dict):
            raise ConfigError(f"Defaults file {path} must contain a mapping")
        return data
