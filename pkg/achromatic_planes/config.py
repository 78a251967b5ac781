"""Runtime configuration: defaults, an optional JSON file, and environment overrides."""

from __future__ import annotations

import copy
import json
import logging
import os
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

logger = logging.getLogger("AchromaticConfig")

BUDGET_ENV_VAR = "ACHROMATIC_PLANES_BUDGET"

DEFAULT_CONFIG: Dict[str, Dict[str, Any]] = {
    "solver": {
        "budget_seconds": None,
        "progress_interval": 200_000,
    },
    "verification": {
        "max_witnesses": 10,
    },
    "output": {
        "indent": 2,
    },
}


def _accepts(default: Any, value: Any) -> bool:
    if isinstance(value, bool):
        return isinstance(default, bool)
    if default is None:
        return value is None or isinstance(value, (int, float))
    if isinstance(default, int):
        return isinstance(value, int)
    return isinstance(value, type(default))


def _merge(base: Dict[str, Any], override: Mapping[str, Any], section: str = "") -> Dict[str, Any]:
    """Merge ``override`` over ``base``; a known key keeps its default on a type mismatch."""
    merged = dict(base)
    for key, value in override.items():
        name = f"{section}.{key}" if section else key
        if key not in merged:
            merged[key] = value
        elif isinstance(merged[key], dict):
            if isinstance(value, Mapping):
                merged[key] = _merge(merged[key], value, name)
            else:
                logger.warning("Ignoring config section %s: expected an object", name)
        elif _accepts(merged[key], value):
            merged[key] = value
        else:
            logger.warning("Ignoring config value %s=%r: wrong type", name, value)
    return merged


def load_config(path: Optional[Union[str, Path]] = None) -> Dict[str, Any]:
    """Load the configuration, falling back to defaults when the file is unusable.

    Args:
        path: Optional JSON file whose sections are merged over ``DEFAULT_CONFIG``

    Returns:
        Dict[str, Any]: The merged configuration; the budget environment variable wins
        over both the file and the defaults
    """
    config = copy.deepcopy(DEFAULT_CONFIG)
    if path is not None:
        try:
            with open(path, "r", encoding="utf-8") as f:
                saved = json.load(f)
            if not isinstance(saved, dict):
                raise ValueError("top level must be a JSON object")
            config = _merge(config, saved)
        except (OSError, ValueError) as e:
            logger.warning("Failed to load configuration from %s: %s", path, e)

    raw_budget = os.environ.get(BUDGET_ENV_VAR)
    if raw_budget:
        try:
            config["solver"]["budget_seconds"] = float(raw_budget)
        except ValueError:
            logger.warning("Ignoring %s=%r: not a number", BUDGET_ENV_VAR, raw_budget)
    return config
