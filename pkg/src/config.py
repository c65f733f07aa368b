"""
Configuration management for qmf.
Loads settings from environment variables with sensible defaults.
"""
import os
from typing import Optional
from dotenv import load_dotenv


class Config:
    """Application configuration loaded from environment variables."""

    def __init__(self, env_file: Optional[str] = None):
        """
        Initialize configuration.

        Args:
            env_file: Optional path to .env file
        """
        if env_file:
            load_dotenv(env_file)
        else:
            load_dotenv()

        # Logging
        self.log_level = os.getenv('QMF_LOG', 'WARNING').upper()

        # Randomized verification
        self.seed = int(os.getenv('QMF_SEED', '0'))
        self.trials = int(os.getenv('QMF_TRIALS', '20'))
        self.show_progress = os.getenv('QMF_PROGRESS', 'false').lower() == 'true'

        # Numerics
        self.mp_dps = int(os.getenv('QMF_MP_DPS', '30'))
        self.svd_rtol = float(os.getenv('QMF_SVD_RTOL', '1e-9'))
        self.fd_step = float(os.getenv('QMF_FD_STEP', '1e-5'))

    def __repr__(self) -> str:
        """String representation of config."""
        return (
            f"Config(log_level={self.log_level}, "
            f"seed={self.seed}, "
            f"trials={self.trials}, "
            f"mp_dps={self.mp_dps}, "
            f"svd_rtol={self.svd_rtol}, "
            f"fd_step={self.fd_step})"
        )


# Global config instance
_config: Optional[Config] = None


def get_config(env_file: Optional[str] = None) -> Config:
    """
    Get or create global config instance (singleton).

    Args:
        env_file: Optional path to .env file

    Returns:
        Config instance
    """
    global _config
    if _config is None:
        _config = Config(env_file)
    return _config


def reset_config():
    """Reset global config instance (useful for testing)."""
    global _config
    _config = None
