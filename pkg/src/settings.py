import os
from dataclasses import dataclass, field
from pathlib import Path

import yaml

from errors import QSymError

ROOT_DIR = Path(__file__).resolve().parents[1]
DEFAULT_CONFIG = ROOT_DIR / "config" / "config.yaml"


@dataclass
class CliSettings:
    format: str = "text"
    nvars: int | None = None


@dataclass
class VerifySettings:
    max_degree: int = 5
    seed: int = 0
    split_samples: int = 50
    coproduct_samples: int = 20
    report_path: str = "results/verify/report.json"


@dataclass
class Settings:
    cli: CliSettings = field(default_factory=CliSettings)
    verify: VerifySettings = field(default_factory=VerifySettings)


def _section(cls, raw, name):
    values = raw.get(name) or {}
    if not isinstance(values, dict):
        raise QSymError(f"config section '{name}' must be a mapping")
    known = {k: v for k, v in values.items() if k in cls.__dataclass_fields__}
    return cls(**known)


def load_settings(path=None):
    """Read the YAML configuration; QSYM_CONFIG overrides the default location."""
    path = Path(path or os.getenv("QSYM_CONFIG") or DEFAULT_CONFIG)
    if not path.exists():
        return Settings()

    try:
        with open(path, "r", encoding="utf-8") as f:
            raw = yaml.safe_load(f) or {}
    except (OSError, yaml.YAMLError) as e:
        raise QSymError(f"cannot read config {path}: {e}") from e

    if not isinstance(raw, dict):
        raise QSymError(f"config {path} must be a mapping")

    return Settings(
        cli=_section(CliSettings, raw, "cli"),
        verify=_section(VerifySettings, raw, "verify"),
    )
