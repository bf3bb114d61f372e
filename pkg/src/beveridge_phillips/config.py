"""Load model configurations from TOML or JSON, with dotted overrides.

A configuration file has up to three tables matching :class:`ModelConfig`::

    [matching]
    s = 0.04
    omega = 1.0

    [prefs]
    delta = 0.03
    sigma = 0.03
    pi_star = 0.02
    kappa_plus = 60000
    kappa_minus = 120000   # omit for symmetric costs
    labor_force = 1.0

    [policy]
    phi = 1.5
    intercept = 0.0212     # omit to track the efficient rate
    enforce_zlb = false

``prefs.kappa`` is accepted as shorthand for symmetric costs.
"""

from __future__ import annotations

import json
from dataclasses import asdict
from pathlib import Path

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

from .dynamics import ModelConfig, Policy, Preferences
from .matching import MatchingParams

SECTIONS = {"matching": MatchingParams, "prefs": Preferences, "policy": Policy}


class ConfigError(ValueError):
    pass


def read_config_file(path) -> dict:
    path = Path(path)
    text = path.read_text()  # OSError propagates to the caller
    suffix = path.suffix.lower()
    try:
        if suffix == ".toml":
            return tomllib.loads(text)
        if suffix == ".json":
            return json.loads(text)
    except (tomllib.TOMLDecodeError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot parse {path}: {exc}") from exc
    raise ConfigError(f"unsupported config format {suffix!r} (use .toml or .json)")


def _parse_value(text: str):
    low = text.strip().lower()
    if low in ("true", "false"):
        return low == "true"
    if low in ("none", "null"):
        return None
    try:
        return float(text)
    except ValueError:
        raise ConfigError(f"cannot parse override value {text!r}") from None


def apply_overrides(data: dict, overrides) -> dict:
    """Apply ``section.field=value`` strings to a raw config mapping."""
    data = {k: dict(v) for k, v in data.items()}
    for item in overrides or ():
        key, sep, value = item.partition("=")
        section, dot, name = key.strip().partition(".")
        if not sep or not dot or section not in SECTIONS:
            raise ConfigError(f"override must look like section.field=value, got {item!r}")
        data.setdefault(section, {})[name] = _parse_value(value)
    return data


def config_from_dict(data: dict) -> ModelConfig:
    unknown = set(data) - set(SECTIONS)
    if unknown:
        raise ConfigError(f"unknown config sections: {sorted(unknown)}")
    parts = {}
    for section, cls in SECTIONS.items():
        fields = dict(data.get(section, {}))
        if section == "prefs" and "kappa" in fields:
            kappa = fields.pop("kappa")
            fields.setdefault("kappa_plus", kappa)
            fields.setdefault("kappa_minus", kappa)
        if section == "policy" and "enforce_zlb" in fields:
            fields["enforce_zlb"] = bool(fields["enforce_zlb"])
        try:
            parts[section] = cls(**fields)
        except TypeError as exc:
            raise ConfigError(f"bad fields in [{section}]: {exc}") from exc
    return ModelConfig(**parts)


def load_config(path=None, overrides=None) -> ModelConfig:
    """Default calibration, updated from ``path`` and then ``overrides``."""
    data = read_config_file(path) if path is not None else {}
    return config_from_dict(apply_overrides(data, overrides))


def config_to_dict(config: ModelConfig) -> dict:
    out = asdict(config)
    if out["policy"]["intercept"] is None:
        del out["policy"]["intercept"]
    return out
