from typing import Dict, Any
import copy
import os
import json

from ..exceptions import ConfigurationError
from ..load_env import load_env

DEFAULT_CONFIG = {
    'field': {
        'max_order': 1 << 17
    },
    'oracle': {
        'naive_limit': 200000,
        'crosscheck_naive': False
    },
    'selftest': {
        'seed': 1,
        'budget_seconds': 60,
        'samples': 40
    },
    'runtime': {
        'threads': 1
    }
}


class ConfigService:
    def __init__(self, config_path: str = "config/settings.json", persist: bool = True):
        self.config_path = config_path
        self.persist = persist
        self.config = self._load_config()

    def _ensure_config_dir(self) -> None:
        """Ensures the configuration directory exists."""
        directory = os.path.dirname(self.config_path)
        if directory:
            os.makedirs(directory, exist_ok=True)

    def _load_config(self) -> Dict:
        """Loads configuration from file or creates default."""
        if os.path.exists(self.config_path):
            try:
                with open(self.config_path, 'r') as f:
                    loaded = json.load(f)
            except (OSError, json.JSONDecodeError) as e:
                raise ConfigurationError(
                    f"Cannot read settings file {self.config_path}: {e}")
            return self._merge_defaults(loaded)
        return self._create_default_config()

    def _merge_defaults(self, loaded: Dict) -> Dict:
        """Fills sections and keys missing from a loaded file with defaults."""
        if not isinstance(loaded, dict):
            raise ConfigurationError("Settings file must hold a JSON object")
        merged = copy.deepcopy(DEFAULT_CONFIG)
        for section, values in loaded.items():
            if not isinstance(values, dict):
                raise ConfigurationError(
                    f"Settings section '{section}' must be an object")
            merged.setdefault(section, {}).update(values)
        return merged

    def _create_default_config(self) -> Dict:
        """Creates and saves default configuration."""
        default_config = copy.deepcopy(DEFAULT_CONFIG)
        if self.persist:
            self.save_config(default_config)
        return default_config

    def save_config(self, config: Dict) -> None:
        """Saves configuration to file."""
        self._ensure_config_dir()
        with open(self.config_path, 'w') as f:
            json.dump(config, f, indent=4)

    def get_section(self, section: str) -> Dict:
        """Gets one section with environment overrides applied."""
        if section not in self.config:
            raise ConfigurationError(f"Unknown settings section '{section}'")
        values = self.config[section].copy()
        values.update(load_env(section))
        return values

    def get_max_order(self) -> int:
        return int(self.get_section('field')['max_order'])

    def get_naive_limit(self) -> int:
        return int(self.get_section('oracle')['naive_limit'])

    def get_crosscheck_naive(self) -> bool:
        return bool(self.get_section('oracle').get('crosscheck_naive', False))

    def get_threads(self) -> int:
        threads = int(self.get_section('runtime')['threads'])
        if threads < 1:
            raise ConfigurationError("runtime.threads must be at least 1")
        return threads

    def get_selftest_config(self) -> Dict:
        """Gets configuration for the self-test runner."""
        return self.get_section('selftest')

    def update_config(self, section: str, key: str, value: Any) -> None:
        """Update a configuration value.

        Args:
            section: Configuration section name
            key: Configuration key
            value: New value to set
        """
        if section not in self.config:
            self.config[section] = {}
        self.config[section][key] = value
        self.save_config(self.config)
