"""
Configuration Manager for amscheme
Handles loading and managing enumeration, output and logging settings
"""
import copy
import os
import json
import logging
from typing import Dict, Any, Optional

from utils.type_converter import convert_variable_types

logger = logging.getLogger(__name__)

# Environment variable -> dot-notation key
ENVIRONMENT_OVERRIDES = {
    'AMSCHEME_ENUM_CAP': 'enumeration.cap',
    'AMSCHEME_CHUNK_SIZE': 'enumeration.chunk_size',
    'AMSCHEME_WORKERS': 'enumeration.workers',
    'AMSCHEME_DEBUG': 'logging.debug',
}


class ConfigManager:
    """
    Manages run configuration: defaults, then config.json, then environment
    """

    DEFAULT_CONFIG = {
        "version": "1.0",
        "enumeration": {
            "cap": 2 ** 25,
            "chunk_size": 65536,
            "workers": 4
        },
        "output": {
            "format": "text",
            "decimal_places": 6
        },
        "logging": {
            "file": False,
            "debug": False
        },
        "fixtures": {
            "directory": "fixtures"
        },
        "design": {
            "max_subsets": 5000000
        }
    }

    def __init__(self, config_file: Optional[str] = None, environ: Optional[Dict[str, str]] = None):
        """
        Initialize ConfigManager

        Args:
            config_file: Path to configuration file (default: $AMSCHEME_CONFIG or 'config.json')
            environ: Environment mapping used for overrides (default: os.environ)
        """
        environ = os.environ if environ is None else environ
        self.config_file = config_file or environ.get('AMSCHEME_CONFIG', 'config.json')
        self._config = None
        self._load_config()
        self._apply_environment(environ)

    def _load_config(self) -> None:
        """
        Load configuration from file, falling back to defaults if file doesn't exist
        """
        self._config = copy.deepcopy(self.DEFAULT_CONFIG)
        if os.path.exists(self.config_file):
            try:
                with open(self.config_file, 'r', encoding='utf-8') as f:
                    loaded = json.load(f)
                self._merge(self._config, loaded)
                logger.info(f"Loaded configuration from {self.config_file}")
            except Exception as e:
                logger.error(f"Error loading config file: {e}. Using defaults.")
                self._config = copy.deepcopy(self.DEFAULT_CONFIG)
        else:
            logger.debug(f"Config file {self.config_file} not found. Using defaults.")

    @staticmethod
    def _merge(target: Dict[str, Any], overlay: Dict[str, Any]) -> None:
        for key, value in overlay.items():
            if isinstance(value, dict) and isinstance(target.get(key), dict):
                ConfigManager._merge(target[key], value)
            else:
                target[key] = value

    def _apply_environment(self, environ: Dict[str, str]) -> None:
        present = {name: environ[name] for name in ENVIRONMENT_OVERRIDES if environ.get(name)}
        for name, value in convert_variable_types(present).items():
            self.set(ENVIRONMENT_OVERRIDES[name], value)
            logger.debug(f"{name} overrides {ENVIRONMENT_OVERRIDES[name]}")

    def save_config(self) -> bool:
        """
        Save current configuration to file

        Returns:
            True if successful, False otherwise
        """
        try:
            with open(self.config_file, 'w', encoding='utf-8') as f:
                json.dump(self._config, f, indent=2)
            logger.info(f"Saved configuration to {self.config_file}")
            return True
        except Exception as e:
            logger.error(f"Error saving config file: {e}")
            return False

    def get(self, key: str, default: Any = None) -> Any:
        """
        Get configuration value by key (supports dot notation)

        Args:
            key: Configuration key (e.g., 'enumeration.cap')
            default: Default value if key not found

        Returns:
            Configuration value or default
        """
        keys = key.split('.')
        value = self._config

        for k in keys:
            if isinstance(value, dict) and k in value:
                value = value[k]
            else:
                return default

        return value

    def set(self, key: str, value: Any) -> None:
        """
        Set configuration value by key (supports dot notation)

        Args:
            key: Configuration key (e.g., 'enumeration.workers')
            value: Value to set
        """
        keys = key.split('.')
        config = self._config

        for k in keys[:-1]:
            if k not in config:
                config[k] = {}
            config = config[k]

        config[keys[-1]] = value

    def get_enumeration_cap(self) -> int:
        return int(self.get('enumeration.cap', 2 ** 25))

    def get_workers(self) -> int:
        return max(1, int(self.get('enumeration.workers', 4)))

    def get_decimal_places(self) -> int:
        """
        Get decimal places for the numeric shadow of exact values

        Returns:
            Number of decimal places
        """
        return int(self.get('output.decimal_places', 6))

    def get_fixtures_directory(self) -> str:
        return self.get('fixtures.directory', 'fixtures')

    def get_max_subsets(self) -> int:
        return int(self.get('design.max_subsets', 5000000))

    def debug_enabled(self) -> bool:
        return bool(self.get('logging.debug', False))

    def get_all(self) -> Dict[str, Any]:
        """
        Get entire configuration

        Returns:
            Configuration dictionary
        """
        return copy.deepcopy(self._config)

    def reset_to_defaults(self) -> None:
        """
        Reset configuration to default values
        """
        self._config = copy.deepcopy(self.DEFAULT_CONFIG)
        logger.info("Configuration reset to defaults")


# Global config manager instance
_config_manager = None


def get_config_manager(config_file: Optional[str] = None) -> ConfigManager:
    """
    Get or create global ConfigManager instance

    Args:
        config_file: Path to configuration file

    Returns:
        ConfigManager instance
    """
    global _config_manager
    if _config_manager is None:
        _config_manager = ConfigManager(config_file)
    return _config_manager


def reset_config_manager() -> None:
    """Forget the global instance; the next get_config_manager() reloads."""
    global _config_manager
    _config_manager = None
