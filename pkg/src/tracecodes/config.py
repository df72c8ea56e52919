"""Enumeration ceilings.

Resolution order, lowest to highest priority: built-in defaults, an optional
JSON config file, the ``TRACECODES_CEILING`` environment variable, explicit
overrides (CLI flags).  The config file is looked up at ``$TRACECODES_CONFIG``
or ``~/.config/tracecodes/config.json`` and may contain
``{"ceiling": int, "planar_ceiling": int}``.
"""

import json
import os
from pathlib import Path

DEFAULT_CEILING = 2**20
DEFAULT_PLANAR_CEILING = 3**10

ENV_CEILING = "TRACECODES_CEILING"
ENV_CONFIG = "TRACECODES_CONFIG"

_overrides: dict[str, int] = {}


def config_path() -> Path:
    env = os.environ.get(ENV_CONFIG)
    if env:
        return Path(env)
    return Path.home() / ".config" / "tracecodes" / "config.json"


def _from_file() -> dict:
    path = config_path()
    if not path.is_file():
        return {}
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    return {k: int(v) for k, v in data.items() if k in ("ceiling", "planar_ceiling")}


def load_config(path: str | os.PathLike | None = None) -> dict:
    """Load a config file explicitly and install it as overrides."""
    if path is None:
        return _from_file()
    with open(path, encoding="utf-8") as fh:
        data = json.load(fh)
    values = {k: int(v) for k, v in data.items() if k in ("ceiling", "planar_ceiling")}
    _overrides.update(values)
    return values


def set_ceiling(value: int | None = None, planar: int | None = None) -> None:
    if value is not None:
        _overrides["ceiling"] = int(value)
    if planar is not None:
        _overrides["planar_ceiling"] = int(planar)


def reset() -> None:
    _overrides.clear()


def get_ceiling() -> int:
    if "ceiling" in _overrides:
        return _overrides["ceiling"]
    env = os.environ.get(ENV_CEILING)
    if env:
        return int(env)
    return _from_file().get("ceiling", DEFAULT_CEILING)


def get_planar_ceiling() -> int:
    if "planar_ceiling" in _overrides:
        return _overrides["planar_ceiling"]
    return _from_file().get("planar_ceiling", DEFAULT_PLANAR_CEILING)
