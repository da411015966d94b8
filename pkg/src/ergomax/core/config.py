"""
ergomax Core Config
Global configuration, environment access and the tolerance table.
"""

import os
import yaml
from pathlib import Path
from typing import Mapping, Optional
from dotenv import load_dotenv

from ergomax.core.errors import ParseError


DEFAULT_TOLERANCES: dict[str, float] = {
    "compare": 1e-10,      # averages: sandwich, convergence, left minimax
    "cycle": 1e-12,        # cycle means, cyclic lemma
    "exact": 1e-12,        # closed forms, conjugate agreement
    "feasibility": 1e-9,   # sub-action slacks, duality gap
    "power": 1e-12,        # power iteration, relative
    "vp_gap": 1e-8,
    "axiom": 1e-9,
    "entropy": 1e-5,
    "vp2_grad": 1e-7,
    "minimax": 1e-12,
    "bilinear": 1e-6,
}

TOL_ENV_VAR = "ERGOMAX_TOL_OVERRIDES"


def get_ergomax_home() -> Path:
    """Get the base directory for ergomax storage."""
    home = Path(os.getenv("ERGOMAX_HOME", Path.home() / ".ergomax"))
    home.mkdir(parents=True, exist_ok=True)
    return home


def get_config_path() -> Path:
    """Get path to config.yaml."""
    return get_ergomax_home() / "config.yaml"


def get_config() -> dict:
    """Load configuration from disk."""
    config_path = get_config_path()
    if config_path.exists():
        with open(config_path, "r") as f:
            return yaml.safe_load(f) or {}
    return {}


def set_config(key: str, value) -> None:
    """Set a configuration value."""
    config = get_config()
    config[key] = value

    with open(get_config_path(), "w") as f:
        yaml.safe_dump(config, f)


def _load_env_if_present() -> None:
    """Load .env file if it exists in current directory."""
    env_path = Path.cwd() / ".env"
    if env_path.exists():
        load_dotenv(env_path)


_load_env_if_present()


def get_config_value(key: str, default: Optional[str] = None) -> Optional[str]:
    """Get a configuration value, falling back to env vars and then default."""
    config = get_config()
    return config.get(key, os.getenv(key.upper(), default))


def parse_tolerance_assignments(items: list[str]) -> dict[str, float]:
    """Parse ``NAME=VALUE`` strings into a validated tolerance mapping."""
    parsed: dict[str, float] = {}
    for item in items:
        item = item.strip()
        if not item:
            continue
        name, sep, raw = item.partition("=")
        name = name.strip()
        if not sep or not name:
            raise ParseError(f"Tolerance override '{item}' is not of the form NAME=VALUE")
        parsed.update(_validated({name: raw.strip()}))
    return parsed


def _validated(overrides: Mapping[str, object]) -> dict[str, float]:
    clean: dict[str, float] = {}
    for name, raw in overrides.items():
        if name not in DEFAULT_TOLERANCES:
            known = ", ".join(sorted(DEFAULT_TOLERANCES))
            raise ParseError(f"Unknown tolerance '{name}' (known: {known})")
        try:
            value = float(raw)
        except (TypeError, ValueError):
            raise ParseError(f"Tolerance '{name}' has non-numeric value {raw!r}") from None
        if not value > 0:
            raise ParseError(f"Tolerance '{name}' must be positive, got {value}")
        clean[name] = value
    return clean


def resolve_tolerances(cli_overrides: Optional[list[str]] = None) -> dict[str, float]:
    """
    Build the effective tolerance table.
    Later sources win: defaults, config.yaml ``tolerances``, the
    ERGOMAX_TOL_OVERRIDES environment variable, then ``--tol`` flags.
    """
    table = dict(DEFAULT_TOLERANCES)

    from_file = get_config().get("tolerances") or {}
    if not isinstance(from_file, dict):
        raise ParseError("config.yaml 'tolerances' must be a mapping")
    table.update(_validated(from_file))

    env_value = os.getenv(TOL_ENV_VAR, "")
    if env_value:
        table.update(parse_tolerance_assignments(env_value.split(",")))

    if cli_overrides:
        table.update(parse_tolerance_assignments(list(cli_overrides)))

    return table
