"""Run configuration for the nilorbits command line.

Settings are resolved from command line arguments, ``NILORBITS_*``
environment variables (a ``.env`` file is read first), a JSON file and the
defaults of :class:`~nilorbits.models.RunConfig`, in that order of priority.
"""

import json
import logging
import os
from pathlib import Path
from typing import Any, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from .exceptions import NilorbitsConfigurationError
from .models import RunConfig

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_FILE = "nilorbits.json"

_ENV_MAPPING = {
    "NILORBITS_SEED": "seed",
    "NILORBITS_TRIALS": "trials",
    "NILORBITS_NUMBERING": "numbering",
    "NILORBITS_OUTPUT": "output",
    "NILORBITS_FRIENDLY_DRAWS": "friendly_draws",
    "NILORBITS_SWEEP_MAX_DIM": "sweep_max_dim",
}
_INTEGER_KEYS = {"seed", "trials", "friendly_draws", "sweep_max_dim"}


class ConfigManager:
    """Layered configuration for one nilorbits run."""

    def __init__(self, config_file: Optional[Path] = None):
        """Initialize ConfigManager.

        Args:
            config_file: Path to configuration file, defaults to "nilorbits.json"
        """
        self.config_file = Path(config_file) if config_file else Path(DEFAULT_CONFIG_FILE)
        self._file_config: dict[str, Any] = {}
        self._env_config: dict[str, Any] = {}
        self._load_file_config()
        self._load_env_config()

    def _load_file_config(self) -> None:
        if not self.config_file.exists():
            logger.debug(f"Config file {self.config_file} not found")
            return
        try:
            with open(self.config_file) as f:
                loaded = json.load(f)
        except (OSError, json.JSONDecodeError) as e:
            logger.warning(f"Failed to load config file {self.config_file}: {e}")
            return
        if not isinstance(loaded, dict):
            logger.warning(f"Config file {self.config_file} does not hold an object")
            return
        self._file_config = loaded
        logger.info(f"Loaded configuration from {self.config_file}")

    def _load_env_config(self) -> None:
        load_dotenv()
        for env_var, config_key in _ENV_MAPPING.items():
            value: Optional[str] = os.getenv(env_var)
            if value is None:
                continue
            processed_value: Any = value.strip().lower()
            if config_key in _INTEGER_KEYS:
                try:
                    processed_value = int(value)
                except ValueError:
                    logger.warning(f"Invalid integer value for {env_var}: {value}")
                    continue
            self._env_config[config_key] = processed_value

    def get_config(self, **cli_args: Any) -> RunConfig:
        """Resolve the configuration.

        CLI args > env vars > config file > defaults. Arguments that are None
        are ignored; keys unknown to :class:`RunConfig` are dropped from the
        file and the environment layers.

        Raises:
            NilorbitsConfigurationError: if a resolved value is invalid
        """
        config_dict: dict[str, Any] = {}
        config_dict.update(self._file_config)
        config_dict.update(self._env_config)
        config_dict.update({k: v for k, v in cli_args.items() if v is not None})

        allowed_fields = set(RunConfig.model_fields)
        unknown = sorted(set(config_dict) - allowed_fields)
        if unknown:
            logger.debug(f"Ignoring unknown configuration keys: {unknown}")
        filtered = {k: v for k, v in config_dict.items() if k in allowed_fields}
        try:
            return RunConfig(**filtered)
        except ValidationError as e:
            raise NilorbitsConfigurationError(
                "Invalid run configuration",
                cause=e,
                errors="; ".join(
                    f"{'.'.join(str(p) for p in err['loc'])}: {err['msg']}"
                    for err in e.errors()
                ),
            ) from e


_default_manager: Optional[ConfigManager] = None


def get_config_manager(config_file: Optional[Path] = None) -> ConfigManager:
    """Shared manager; a different ``config_file`` replaces it."""
    global _default_manager
    if _default_manager is None or (
        config_file is not None and Path(config_file) != _default_manager.config_file
    ):
        _default_manager = ConfigManager(config_file)
    return _default_manager


def get_config(**cli_args: Any) -> RunConfig:
    """Resolve the configuration with the shared manager."""
    return get_config_manager().get_config(**cli_args)
