"""Runtime configuration: JSON config file and RKU_* environment variables.

Precedence (low to high): built-in defaults, config file, environment,
explicit overrides (CLI flags).
"""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping


class ConfigError(Exception):
    pass


DEFAULT_PORT = 8080
DEFAULT_TTL_HOURS = 24.0
DEFAULT_STORE_PATH = "./data"

_FILE_KEYS = {"store_path", "port", "token_ttl_hours", "webhook_url", "static_dir"}

_ENV_KEYS = {
    "RKU_STORE_PATH": "store_path",
    "RKU_PORT": "port",
    "RKU_TOKEN_TTL_HOURS": "token_ttl_hours",
    "RKU_WEBHOOK_URL": "webhook_url",
    "RKU_STATIC_DIR": "static_dir",
}


@dataclass(frozen=True)
class AppConfig:
    store_path: Path
    port: int = DEFAULT_PORT
    token_ttl_hours: float = DEFAULT_TTL_HOURS
    webhook_url: str | None = None
    static_dir: Path | None = None


def _coerce(values: dict[str, Any]) -> AppConfig:
    try:
        port = int(values["port"])
        ttl = float(values["token_ttl_hours"])
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad numeric config value: {exc}") from exc
    if not 0 < port < 65536:
        raise ConfigError(f"port out of range: {port}")
    if ttl <= 0:
        raise ConfigError(f"token TTL must be positive: {ttl}")
    static_dir = values["static_dir"]
    return AppConfig(
        store_path=Path(values["store_path"]),
        port=port,
        token_ttl_hours=ttl,
        webhook_url=values["webhook_url"] or None,
        static_dir=Path(static_dir) if static_dir else None,
    )


def load_config(
    env: Mapping[str, str] = os.environ,
    config_file: str | Path | None = None,
    **overrides: Any,
) -> AppConfig:
    """Resolve the effective configuration.

    ``config_file`` defaults to the RKU_CONFIG environment variable.
    Overrides given as ``None`` are ignored.
    """
    values: dict[str, Any] = {
        "store_path": DEFAULT_STORE_PATH,
        "port": DEFAULT_PORT,
        "token_ttl_hours": DEFAULT_TTL_HOURS,
        "webhook_url": None,
        "static_dir": None,
    }
    path = config_file if config_file is not None else env.get("RKU_CONFIG")
    if path:
        try:
            raw = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ConfigError(f"config file {path} must hold a JSON object")
        unknown = set(raw) - _FILE_KEYS
        if unknown:
            raise ConfigError(f"unknown config keys: {', '.join(sorted(unknown))}")
        values.update(raw)
    for env_key, key in _ENV_KEYS.items():
        if env_key in env:
            values[key] = env[env_key]
    for key, value in overrides.items():
        if key not in _FILE_KEYS:
            raise ConfigError(f"unknown config override: {key}")
        if value is not None:
            values[key] = value
    return _coerce(values)
