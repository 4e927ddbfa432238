import os
import logging
from dataclasses import dataclass

# Configuration comes from the environment or a local .env file
try:
    from dotenv import load_dotenv
    load_dotenv()
except ImportError:
    pass

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Settings:
    seed: int = 1234
    coarse_tol: float = 1e-2
    fine_tol: float = 1e-6
    float_slack: float = 1e-12
    output_dir: str = "."
    log_level: str = "WARNING"


def _env_float(key: str, default: float) -> float:
    raw = os.getenv(key)
    if raw is None or raw.strip() == "":
        return default
    try:
        return float(raw)
    except ValueError:
        logger.warning(f"Ignoring {key}={raw!r}: not a number, using {default}")
        return default


def _env_int(key: str, default: int) -> int:
    raw = os.getenv(key)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        logger.warning(f"Ignoring {key}={raw!r}: not an integer, using {default}")
        return default


def get_settings() -> Settings:
    """
    Read REALFN_* settings. Environment values win over defaults;
    CLI flags win over both (applied by the caller).
    """
    return Settings(
        seed=_env_int("REALFN_SEED", Settings.seed),
        coarse_tol=_env_float("REALFN_COARSE_TOL", Settings.coarse_tol),
        fine_tol=_env_float("REALFN_FINE_TOL", Settings.fine_tol),
        float_slack=_env_float("REALFN_FLOAT_SLACK", Settings.float_slack),
        output_dir=os.getenv("REALFN_OUTPUT_DIR", Settings.output_dir),
        log_level=os.getenv("REALFN_LOG_LEVEL", Settings.log_level).upper(),
    )


def configure_logging(level: str = None):
    """Logs go to stderr so CSV/JSON on stdout stay clean."""
    level = level or get_settings().log_level
    logging.basicConfig(
        level=getattr(logging, level, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
    )
