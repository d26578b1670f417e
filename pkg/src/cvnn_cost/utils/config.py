"""
Configuration
YAML settings merged over built-in defaults, and RunConfig files for `cost --config`
"""

import copy
import os
from pathlib import Path
from typing import Any, Dict, Optional, Union

import yaml

from ..core.errors import InvalidSpecError
from ..core.specs import Spec, spec_from_fields

SEED_ENV = "CVNN_SEED"
DEFAULT_CONFIG_FILE = "config.yaml"

DEFAULTS: Dict[str, Any] = {
    "seed": 0,
    "verify": {
        "max_inputs": 16,
        "max_outputs": 16,
        "max_neurons": 64,
        "max_layers": 5,
        "deep_trials": 0,
    },
    "training": {
        "learning_rate": 0.01,
        "weight_rate": None,
        "center_rate": None,
        "width_rate": None,
    },
    "gradient_check": {
        "step": 1e-6,
        "tolerance": 1e-5,
        "fcrbf_tolerance": 1e-4,
    },
    "asymptote": {
        "shallow_exponents": [4, 14],
        "deep_n_dominant_exponents": [4, 12],
        "deep_balanced_exponents": [4, 8],
        "n_dominant_io": 4,
        "n_dominant_layers": 4,
    },
    "logging": {
        "level": "INFO",
        "file": None,
    },
}

RUN_CONFIG_KEYS = {"architecture", "mode", "inputs", "outputs", "neurons", "bottlenecks"}
RUN_MODES = {"training", "inference", "both"}


def _merge(base: Dict, override: Dict, section: str = "") -> Dict:
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if key not in base:
            where = f"{section}.{key}" if section else key
            raise InvalidSpecError(f"unknown configuration key '{where}'")
        if isinstance(base[key], dict):
            if not isinstance(value, dict):
                raise InvalidSpecError(f"configuration section '{key}' must be a mapping")
            merged[key] = _merge(base[key], value, key)
        else:
            merged[key] = value
    return merged


def load_config(path: Union[str, Path, None] = None) -> Dict[str, Any]:
    """Defaults, overlaid with `path` (or ./config.yaml when present).

    An explicit path that does not exist raises FileNotFoundError.
    """
    if path is None:
        if not Path(DEFAULT_CONFIG_FILE).exists():
            return copy.deepcopy(DEFAULTS)
        path = DEFAULT_CONFIG_FILE
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = yaml.safe_load(f) or {}
        except yaml.YAMLError as exc:
            raise InvalidSpecError(f"{path}: invalid YAML ({exc})") from exc
    if not isinstance(data, dict):
        raise InvalidSpecError(f"{path}: top level must be a mapping")
    return _merge(DEFAULTS, data)


def resolve_seed(cli_seed: Optional[int], config: Dict[str, Any]) -> int:
    """--seed, else CVNN_SEED, else the configured seed"""
    if cli_seed is not None:
        return cli_seed
    env = os.environ.get(SEED_ENV)
    if env:
        try:
            return int(env)
        except ValueError:
            raise InvalidSpecError(f"{SEED_ENV} must be an integer, got '{env}'") from None
    return int(config.get("seed", 0))


def load_run_config(path: Union[str, Path]) -> Dict[str, Any]:
    """Read a RunConfig file and check its keys; returns the raw mapping"""
    with open(path, "r", encoding="utf-8") as f:
        try:
            data = yaml.safe_load(f)
        except yaml.YAMLError as exc:
            raise InvalidSpecError(f"{path}: invalid YAML ({exc})") from exc
    if not isinstance(data, dict):
        raise InvalidSpecError(f"{path}: run configuration must be a mapping")
    unknown = set(data) - RUN_CONFIG_KEYS
    if unknown:
        raise InvalidSpecError(f"{path}: unknown keys {sorted(unknown)}")
    missing = {"architecture", "inputs", "outputs", "neurons"} - set(data)
    if missing:
        raise InvalidSpecError(f"{path}: missing keys {sorted(missing)}")
    mode = str(data.get("mode", "both")).lower()
    if mode not in RUN_MODES:
        raise InvalidSpecError(f"{path}: mode must be one of {sorted(RUN_MODES)}")
    data["mode"] = mode
    return data


def run_config_spec(data: Dict[str, Any]) -> Spec:
    return spec_from_fields(data["architecture"], data["inputs"], data["outputs"],
                            data["neurons"], data.get("bottlenecks"))
