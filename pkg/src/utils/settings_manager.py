"""Settings manager for the Salem Entropy Toolkit."""

import os
import json
from fractions import Fraction

from platformdirs import user_config_dir

from .. import config
from .logger import get_logger
from .system_info import default_worker_count

logger = get_logger()


class SettingsManager:
    _instance = None
    def __new__(cls, *args, **kwargs):
        if cls._instance is None:
            cls._instance = super(SettingsManager, cls).__new__(cls)
            # Only initialize once
            cls._instance._initialized = False
        return cls._instance

    def __init__(self):
        if self._initialized:
            return
        self.app_data_dir = user_config_dir(config.APP_NAME, appauthor=False)
        self.settings_file = os.path.join(self.app_data_dir, 'settings.json')
        self.settings = self._get_default_settings()
        self._loaded = False
        self._initialized = True
    
    def _get_default_settings(self):
        """Get default settings from config.py."""
        return {
            "TOLERANCE": config.DEFAULT_TOLERANCE,
            "PERIOD_TOLERANCE": config.DEFAULT_PERIOD_TOLERANCE,
            "EIGEN_TOLERANCE": config.DEFAULT_EIGEN_TOLERANCE,
            "SIGNATURE_MARGIN": config.DEFAULT_SIGNATURE_MARGIN,
            "NUM_WORKERS": default_worker_count(config.DEFAULT_NUM_WORKERS),
            "DISPLAY_DIGITS": config.DEFAULT_DISPLAY_DIGITS,
        }
    
    def load_settings(self):
        """Load settings from file, once per process."""
        if self._loaded:
            return True
        try:
            if os.path.exists(self.settings_file):
                with open(self.settings_file, 'r', encoding='utf-8') as f:
                    loaded_settings = json.load(f)
                    # Keep defaults for any missing keys
                    self.settings.update(loaded_settings)
                logger.info(f"Settings loaded from {self.settings_file}")
                self._loaded = True
                return True
            else:
                logger.debug("Settings file not found, using defaults")
                return False
        except (OSError, ValueError) as e:
            logger.error(f"Error loading settings: {e}")
            return False
    
    def save_settings(self):
        """Save settings to file."""
        try:
            os.makedirs(self.app_data_dir, exist_ok=True)
            
            with open(self.settings_file, 'w', encoding='utf-8') as f:
                json.dump(self.settings, f, indent=4)
            
            logger.info(f"Settings saved to {self.settings_file}")
            return True
        except OSError as e:
            logger.error(f"Error saving settings: {e}")
            return False
    
    def get(self, key, default=None):
        """Get a setting value."""
        return self.settings.get(key, default)
    
    def settings_exist(self):
        """Check if settings file exists."""
        return os.path.exists(self.settings_file)

    def tolerance(self):
        """The exact bracket tolerance as a Fraction."""
        return Fraction(str(self.get("TOLERANCE", config.DEFAULT_TOLERANCE)))


def default_tolerance():
    """Bracket tolerance from the loaded settings."""
    settings_manager = SettingsManager()
    settings_manager.load_settings()
    return settings_manager.tolerance()


def float_setting(key, default):
    """Read a float-valued setting."""
    settings_manager = SettingsManager()
    settings_manager.load_settings()
    return float(settings_manager.get(key, default))
