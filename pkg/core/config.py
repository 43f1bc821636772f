"""
Configuration management - reads settings from the environment (.env supported).
"""

import os
from typing import Dict, Any, Optional
from dotenv import load_dotenv


class Config:
    """Configuration manager that reads from environment variables."""

    _cache: Optional[Dict[str, Any]] = None

    # key -> (environment variable, default)
    NUMBER_KEYS = {
        'enumerationCap': ('WEAKCHAR_ENUM_CAP', 1_000_000),
        'memoryWarnElements': ('WEAKCHAR_MEMORY_WARN', 1_000_000),
        'subsetRankCap': ('WEAKCHAR_SUBSET_RANK_CAP', 62),
        'bruteCountCap': ('WEAKCHAR_BRUTE_COUNT_CAP', 20),
        'posetMaxRankA': ('WEAKCHAR_POSET_MAX_RANK_A', 7),
        'posetMaxRankBD': ('WEAKCHAR_POSET_MAX_RANK_BD', 5),
        'defaultTruncation': ('WEAKCHAR_TRUNCATION', 10),
        'verifyWorkers': ('WEAKCHAR_VERIFY_WORKERS', 4),
        'randomSeed': ('WEAKCHAR_SEED', 20240101),
    }

    @classmethod
    def get_config(cls) -> Dict[str, Any]:
        """Retrieves the configuration map, loading .env on first use."""
        if cls._cache:
            return cls._cache

        load_dotenv()

        def get_number(key: str) -> int:
            env_name, default = cls.NUMBER_KEYS[key]
            raw = os.getenv(env_name)
            if raw is None or not raw.strip():
                return default
            try:
                value = int(float(raw))
            except (ValueError, TypeError):
                raise ValueError(f"Invalid number value for '{env_name}': {raw}")
            if value < 0:
                raise ValueError(f"Negative value for '{env_name}': {raw}")
            return value

        config = {key: get_number(key) for key in cls.NUMBER_KEYS}

        if config['verifyWorkers'] < 1:
            raise ValueError("WEAKCHAR_VERIFY_WORKERS must be at least 1.")

        cls._cache = config
        return config

    @classmethod
    def get(cls, key: str) -> Any:
        """Reads a single configuration value."""
        return cls.get_config()[key]

    @classmethod
    def override(cls, **values: Any):
        """Overrides values for the current process (used by CLI flags)."""
        config = dict(cls.get_config())
        for key, value in values.items():
            if key not in cls.NUMBER_KEYS:
                raise ValueError(f"Unknown configuration key '{key}'.")
            if value is not None:
                config[key] = value
        cls._cache = config

    @classmethod
    def clear_cache(cls):
        """Clears the in-memory configuration cache."""
        cls._cache = None
