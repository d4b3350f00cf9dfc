import os
import sys
from dataclasses import dataclass
from dotenv import load_dotenv, find_dotenv

# Load .env from project or workspace if present
load_dotenv(find_dotenv(usecwd=True), override=False)

_REPO_ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))


def _env_bool(name: str, default: str) -> bool:
    return os.getenv(name, default).strip().lower() in ("1", "true", "yes", "on")


@dataclass(frozen=True)
class Config:
    # Logging
    log_level: str = os.getenv("LOG_LEVEL", "INFO")
    log_file: str = os.getenv("LOG_FILE", "")  # empty = console only
    # Enumeration caps (desk scale)
    orientation_cap: int = int(os.getenv("ORIENTATION_CAP", "20"))  # 2^n orientation scans
    phi_cap: int = int(os.getenv("PHI_CAP", "16"))  # full subset-orientation tables
    tu_cap: int = int(os.getenv("TU_CAP", "16"))  # exhaustive unimodularity check
    geometric_cap: int = int(os.getenv("GEOMETRIC_CAP", "10"))  # n+r bound for the LP oracle
    # Execution
    threads: int = int(os.getenv("THREADS", "1"))
    verify: bool = _env_bool("VERIFY", "true")
    # Data
    catalog_dir: str = os.getenv("CATALOG_DIR", "catalog")

config = Config()

def validate_config() -> None:
    for name in ("orientation_cap", "phi_cap", "tu_cap", "geometric_cap", "threads"):
        value = getattr(config, name)
        if value < 1:
            raise RuntimeError(
                f"{name.upper()} must be a positive integer (got {value}). Fix it in .env or the environment."
            )
    if config.log_level.upper() not in ("DEBUG", "INFO", "WARNING", "ERROR"):
        raise RuntimeError("LOG_LEVEL must be one of DEBUG, INFO, WARNING, ERROR.")

    # Normalize catalog_dir when relative: repository root, or the executable directory when frozen
    if not os.path.isabs(config.catalog_dir):
        base_dir = os.path.dirname(sys.executable) if getattr(sys, "frozen", False) else _REPO_ROOT
        # mutate frozen dataclass via object.__setattr__ since frozen=True
        object.__setattr__(config, "catalog_dir", os.path.join(base_dir, config.catalog_dir))

def apply_overrides(threads: int | None = None, verify: bool | None = None) -> None:
    """Apply command-line overrides on top of the environment settings."""
    if threads is not None:
        if threads < 1:
            raise RuntimeError("--threads must be a positive integer.")
        object.__setattr__(config, "threads", threads)
    if verify is not None:
        object.__setattr__(config, "verify", verify)

def catalog_path(name: str) -> str:
    directory = config.catalog_dir
    if not os.path.isabs(directory):
        directory = os.path.join(_REPO_ROOT, directory)
    return os.path.join(directory, name)
