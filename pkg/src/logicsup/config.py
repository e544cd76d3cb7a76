import math
import os
from dataclasses import dataclass, fields, replace
from typing import Optional

import yaml
from loguru import logger

from logicsup.errors import InputError

CONFIG_FILE = "config.yaml"
ENV_PREFIX = "LOGICSUP_TOL_"

DEFAULT_CONFIG = {
    "verbose": False,
    "save": False,
    "log_file": "logicsup.log",
    "log_level": "INFO",
    "format": "text",
    "tolerances": {
        "cluster": None,
        "zero": None,
        "orth": 1e-8,
        "eq": 1e-9,
        "order": 1e-8,
        "idem": 1e-7,
        "herm": 1e-10,
        "psd": 1e-9,
        "rank": None,
        "match": None,
    },
}


@dataclass(frozen=True)
class Tolerances:
    """
    Numerical thresholds shared by every operation.

    ``None`` for cluster, zero, rank and match means the value is derived
    from the operator at hand (see the ``*_for`` helpers).
    """

    cluster: Optional[float] = None
    zero: Optional[float] = None
    orth: float = 1e-8
    eq: float = 1e-9
    order: float = 1e-8
    idem: float = 1e-7
    herm: float = 1e-10
    psd: float = 1e-9
    rank: Optional[float] = None
    match: Optional[float] = None

    def cluster_for(self, norm: float) -> float:
        if self.cluster is not None:
            return self.cluster
        return 1e-8 * max(1.0, norm)

    def zero_for(self, norm: float) -> float:
        if self.zero is not None:
            return self.zero
        return self.cluster_for(norm)

    def rank_for(self, dim: int) -> float:
        if self.rank is not None:
            return self.rank
        return 1e-10 * math.sqrt(dim)

    def match_for(self, *cluster_tols: float) -> float:
        if self.match is not None:
            return self.match
        return 2.0 * max(cluster_tols, default=self.cluster_for(0.0))

    def replace(self, **overrides) -> "Tolerances":
        return replace(self, **{k: v for k, v in overrides.items() if v is not None})

    def as_dict(self) -> dict:
        return {f.name: getattr(self, f.name) for f in fields(self)}

    @classmethod
    def from_config(cls, config: dict) -> "Tolerances":
        section = config.get("tolerances") or {}
        known = {f.name for f in fields(cls)}
        values = {}
        for key, value in section.items():
            if key not in known:
                logger.warning(f"Ignoring unknown tolerance '{key}' in configuration.")
                continue
            if value is None:
                continue
            try:
                values[key] = float(value)
            except (TypeError, ValueError):
                raise InputError(f"Tolerance '{key}' in configuration is not a number: {value!r}")
        return cls(**values)


DEFAULT_TOLERANCES = Tolerances()


def apply_env_overrides(config: dict) -> None:
    tolerances = config.setdefault("tolerances", {})
    for key in DEFAULT_CONFIG["tolerances"]:
        name = ENV_PREFIX + key.upper()
        raw = os.getenv(name)
        if not raw:
            continue
        try:
            tolerances[key] = float(raw)
        except ValueError:
            raise InputError(f"Environment variable {name}={raw!r} is not a number")


def load_config(config_file: str = CONFIG_FILE) -> dict:
    config = {}
    exists = os.path.exists(config_file)
    if exists:
        with open(config_file, "r") as f:
            config = yaml.safe_load(f) or {}
    updated = False
    for key, value in DEFAULT_CONFIG.items():
        if key not in config:
            config[key] = dict(value) if isinstance(value, dict) else value
            updated = True
        elif isinstance(value, dict):
            if config[key] is None:
                config[key] = {}
            for sub_key, sub_value in value.items():
                if sub_key not in config[key]:
                    config[key][sub_key] = sub_value
                    updated = True

    if updated and exists:
        with open(config_file, "w") as f:
            yaml.dump(config, f)
        logger.info(f"Updated configuration file {config_file} with missing keys.")

    apply_env_overrides(config)
    return config


def write_default_config(config_file: str = CONFIG_FILE) -> None:
    with open(config_file, "w") as f:
        yaml.dump(DEFAULT_CONFIG, f)
