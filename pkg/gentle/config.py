# Runtime settings for gentle-phi
# Values come from the environment; a .env file next to the working
# directory is loaded first. See .env.example for every key.

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Optional

from dotenv import load_dotenv

load_dotenv()


def _int_env(name: str, default: int) -> int:
    raw = os.environ.get(name, "").strip()
    if not raw:
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"{name} must be an integer, got {raw!r}")


@dataclass(frozen=True)
class Settings:
    log_level: str = "WARNING"
    oracle_initial_depth: int = 4
    generator_max_attempts: int = 64
    generator_repair_rounds: int = 32
    batch_workers: int = 4
    json_indent: Optional[int] = None


@lru_cache(maxsize=1)
def get_settings() -> Settings:
    indent_raw = os.environ.get("GENTLE_JSON_INDENT", "").strip()
    return Settings(
        log_level=os.environ.get("GENTLE_LOG_LEVEL", "WARNING").upper(),
        oracle_initial_depth=max(1, _int_env("GENTLE_ORACLE_INITIAL_DEPTH", 4)),
        generator_max_attempts=_int_env("GENTLE_GENERATOR_MAX_ATTEMPTS", 64),
        generator_repair_rounds=_int_env("GENTLE_GENERATOR_REPAIR_ROUNDS", 32),
        batch_workers=max(1, _int_env("GENTLE_BATCH_WORKERS", 4)),
        json_indent=int(indent_raw) if indent_raw else None,
    )
