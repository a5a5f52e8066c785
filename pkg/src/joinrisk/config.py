"""Runtime settings: JSON config file plus environment overrides."""

import json
import os
from dataclasses import dataclass, fields
from pathlib import Path

from .catalog import DEFAULT_CATALOG_URL
from .corpus import DEFAULT_RECORD_CAP
from .disclosure import DEFAULT_NMI_MODE
from .embedding import DEFAULT_WEIGHT_CANDIDATES
from .pairrisk import DEFAULT_ALPHA, DEFAULT_KEY_SIZE
from .vulnerability import VULNERABLE_THRESHOLD

ENV_PREFIX = "JOINRISK_"


@dataclass
class Settings:
    record_cap: int = DEFAULT_RECORD_CAP
    truncate: bool = False
    cache_dir: str = ".joinrisk-cache"
    catalog_base_url: str = DEFAULT_CATALOG_URL
    port: int = 8400
    alpha: float = DEFAULT_ALPHA
    vulnerable_threshold: int = VULNERABLE_THRESHOLD
    nmi_mode: str = DEFAULT_NMI_MODE
    numeric_join_mode: str = "binned"
    key_size: int = DEFAULT_KEY_SIZE
    weight_candidates: tuple = DEFAULT_WEIGHT_CANDIDATES
    seed: int = 0

    def cache_path(self) -> Path:
        return Path(self.cache_dir)


def _coerce(current, raw):
    if isinstance(current, bool):
        return str(raw).strip().lower() in ("1", "true", "yes", "on")
    if isinstance(current, int):
        return int(raw)
    if isinstance(current, float):
        return float(raw)
    if isinstance(current, tuple):
        if isinstance(raw, (list, tuple)):
            return tuple(float(v) for v in raw)
        return tuple(float(v) for v in str(raw).split(","))
    return raw


def load_settings(config_file=None, env=None) -> Settings:
    """Settings from defaults, then a JSON config file, then JOINRISK_*
    environment variables (highest precedence)."""
    env = os.environ if env is None else env
    settings = Settings()
    if config_file is not None:
        data = json.loads(Path(config_file).read_text(encoding="utf-8"))
        for f in fields(Settings):
            if f.name in data:
                setattr(settings, f.name,
                        _coerce(getattr(settings, f.name), data[f.name]))
    for f in fields(Settings):
        key = ENV_PREFIX + f.name.upper()
        if key in env:
            setattr(settings, f.name,
                    _coerce(getattr(settings, f.name), env[key]))
    return settings
