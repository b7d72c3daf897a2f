"""Flat ``key = value`` configuration file.

Lookup order: the ``--config`` flag, the ``PDDL_FORGE_CONFIG`` environment
variable, then ``$XDG_CONFIG_HOME/pddl-forge/config`` (default
``~/.config/pddl-forge/config``). Only the first two must exist when given.

Recognized keys::

    planner_command = ff -o {domain} -f {problem}
    renderer_command = dot
    template_dir = ~/pddl/templates
    color.<scope> = 1;34          # SGR parameters; empty or "none" disables
    distance.coord_functions = x-pos, y-pos, z-pos
    distance.function = distance
    distance.decimal_places = 3
    distance.symmetric = true
    distance.target_type = location
"""

from __future__ import annotations

import os
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Optional

from .distance import DistanceConfig
from .errors import ConfigError
from .scopes import DEFAULT_COLORS, SCOPES

ENV_VAR = "PDDL_FORGE_CONFIG"


@dataclass(frozen=True)
class Config:
    planner_command: Optional[str] = None
    renderer_command: Optional[str] = None
    color_map: dict = field(default_factory=lambda: dict(DEFAULT_COLORS))
    template_dir: Optional[Path] = None
    distance: DistanceConfig = field(default_factory=DistanceConfig)
    source: Optional[Path] = None

    @property
    def snippet_dir(self) -> Optional[Path]:
        return self.template_dir / "snippets" if self.template_dir else None


def default_path() -> Path:
    base = os.environ.get("XDG_CONFIG_HOME") or Path.home() / ".config"
    return Path(base) / "pddl-forge" / "config"


def _bool(key, value):
    lowered = value.lower()
    if lowered in ("1", "true", "yes", "on"):
        return True
    if lowered in ("0", "false", "no", "off"):
        return False
    raise ConfigError(f"{key}: expected true or false, got {value!r}")


def parse_config(text: str, source=None) -> Config:
    cfg = Config(source=source)
    colors = dict(cfg.color_map)
    dist = {}
    where = f"{source}: " if source else ""
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ConfigError(f"{where}line {lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key == "planner_command":
            cfg = replace(cfg, planner_command=value or None)
        elif key == "renderer_command":
            cfg = replace(cfg, renderer_command=value or None)
        elif key == "template_dir":
            cfg = replace(cfg, template_dir=Path(value).expanduser() if value else None)
        elif key.startswith("color."):
            scope = key[len("color."):]
            if scope not in SCOPES:
                raise ConfigError(f"{where}line {lineno}: unknown scope {scope!r}")
            if value.lower() in ("", "none"):
                colors.pop(scope, None)
            else:
                colors[scope] = value
        elif key == "distance.coord_functions":
            dist["coord_function_names"] = tuple(v.strip() for v in value.split(",") if v.strip())
        elif key == "distance.function":
            dist["distance_function_name"] = value
        elif key == "distance.decimal_places":
            try:
                dist["decimal_places"] = int(value)
            except ValueError:
                raise ConfigError(f"{where}line {lineno}: {key} must be an integer") from None
        elif key == "distance.symmetric":
            dist["symmetric"] = _bool(key, value)
        elif key == "distance.target_type":
            dist["target_type"] = value or None
        else:
            raise ConfigError(f"{where}line {lineno}: unknown key {key!r}")
    try:
        distance = DistanceConfig(**dist)
    except ValueError as exc:
        raise ConfigError(f"{where}{exc}") from None
    return replace(cfg, color_map=colors, distance=distance)


def load_config(path=None) -> Config:
    explicit = path or os.environ.get(ENV_VAR)
    candidate = Path(explicit) if explicit else default_path()
    if not candidate.is_file():
        if explicit:
            raise ConfigError(f"config file {candidate} does not exist")
        return Config()
    return parse_config(candidate.read_text("utf-8"), candidate)
