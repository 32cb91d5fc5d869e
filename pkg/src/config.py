import logging
import os

from dotenv import load_dotenv

from src.errors import ConfigError

load_dotenv()

LOG_FORMAT = "%(name)s:%(levelname)s:%(message)s"

MODELS = ("full", "nbc", "both")
FORMATS = ("json", "tsv")
VERIFY_LEVELS = ("fast", "paranoid")


def _int_env(name, default):
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{name} must be an integer, got {raw!r}")
    if value < 1:
        raise ConfigError(f"{name} must be at least 1, got {value}")
    return value


def get_threads():
    """Worker cap for per-degree SNF and corpus runs (NBC_THREADS)."""
    return _int_env("NBC_THREADS", 1)


def get_paranoid_max_edges():
    return _int_env("CHROMHOM_PARANOID_MAX_EDGES", 8)


def get_defaults():
    """
    Read default run settings from the environment (.env is loaded at import)

    Returns:
        Dict with 'algebra', 'model', 'format', 'verify', 'threads', 'log_level'
    """
    defaults = {
        "algebra": os.getenv("CHROMHOM_ALGEBRA", "am:2"),
        "model": os.getenv("CHROMHOM_MODEL", "both"),
        "format": os.getenv("CHROMHOM_FORMAT", "json"),
        "verify": os.getenv("CHROMHOM_VERIFY", "fast"),
        "threads": get_threads(),
        "log_level": os.getenv("CHROMHOM_LOG_LEVEL", "WARNING").upper(),
    }

    if defaults["model"] not in MODELS:
        raise ConfigError(f"CHROMHOM_MODEL must be one of {MODELS}")
    if defaults["format"] not in FORMATS:
        raise ConfigError(f"CHROMHOM_FORMAT must be one of {FORMATS}")
    if defaults["verify"] not in VERIFY_LEVELS:
        raise ConfigError(f"CHROMHOM_VERIFY must be one of {VERIFY_LEVELS}")

    return defaults


def setup_logging(level=None):
    if level is None:
        level = os.getenv("CHROMHOM_LOG_LEVEL", "WARNING")
    numeric = logging.getLevelName(str(level).upper())
    if not isinstance(numeric, int):
        raise ConfigError(f"unknown log level {level!r}")
    logging.basicConfig(format=LOG_FORMAT, level=numeric)
    logging.getLogger("src").setLevel(numeric)
