import dotenv
import os
from typing import Dict

from .exceptions import ConfigurationError

# Environment variable -> (config section, key)
ENV_OVERRIDES = {
    'NQCOUNT_MAX_ORDER': ('field', 'max_order'),
    'NQCOUNT_NAIVE_LIMIT': ('oracle', 'naive_limit'),
    'NQCOUNT_THREADS': ('runtime', 'threads'),
    'NQCOUNT_SEED': ('selftest', 'seed'),
}


def load_env(section: str) -> Dict[str, int]:
    """Load integer overrides for one configuration section from the environment.

    Args:
        section (str): Configuration section ('field', 'oracle', 'runtime' or 'selftest')

    Returns:
        Dict[str, int]: Overrides found for the section, keyed by setting name
    """
    dotenv.load_dotenv()
    overrides = {}
    for var, (var_section, key) in ENV_OVERRIDES.items():
        if var_section != section:
            continue
        raw = os.getenv(var)
        if raw is None or raw == '':
            continue
        try:
            overrides[key] = int(raw)
        except ValueError:
            raise ConfigurationError(f"{var} must be an integer, got {raw!r}")
    return overrides


def config_path_from_env(default: str) -> str:
    """Return the settings path, honouring NQCOUNT_CONFIG."""
    dotenv.load_dotenv()
    return os.getenv('NQCOUNT_CONFIG') or default
