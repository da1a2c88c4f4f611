import copy
import logging
import os

import yaml

DEFAULT_CONFIG_PATH = os.path.join(
    os.path.dirname(os.path.dirname(__file__)), "config", "parameters.yaml"
)

DEFAULTS = {
    "logging": {
        "level": "INFO",
        "format": "%(asctime)s %(levelname)s %(name)s: %(message)s",
    },
    "enumeration": {
        "jobs": 1,
        "out_dir": "results",
        "graphs": ["g36", "g45", "g54", "g63"],
        "relaxed": {"graphs": ["g36", "g45", "g54", "g63"]},
    },
    "oracle": {
        "exhaustive_max_vertices": 8,
        "subdivision_max_vertices": 40,
        "max_base_vertices": 4,
    },
    "symmetry": {"max_automorphisms": 100000},
    "properties": {
        "random_seed": 2011,
        "stacked_ball_trials": 1000,
        "stacked_ball_max_facets": 40,
        "stacked_sphere_trials": 500,
        "stacked_sphere_max_facets": 25,
        "pasted_trials": 300,
    },
    "report": {"json_indent": 2},
}

_cache = {}


def _merge(base, override):
    merged = copy.deepcopy(base)
    for key, value in (override or {}).items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = _merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_parameters(path=None):
    """
    Load parameters.yaml merged over DEFAULTS.
    Results are cached per path; callers get a private copy.
    """
    path = os.path.abspath(path or DEFAULT_CONFIG_PATH)
    if path not in _cache:
        yaml_config = {}
        if os.path.exists(path):
            with open(path, "r") as f:
                yaml_config = yaml.safe_load(f) or {}
        _cache[path] = _merge(DEFAULTS, yaml_config)
    return copy.deepcopy(_cache[path])


def configure_logging(params=None, level=None):
    params = params or load_parameters()
    log_cfg = params.get("logging", {})
    level = level or log_cfg.get("level", "INFO")
    logging.basicConfig(
        level=getattr(logging, str(level).upper(), logging.INFO),
        format=log_cfg.get("format", DEFAULTS["logging"]["format"]),
        force=True,
    )
