# --------------------------------------------------------
# Licensed under The MIT License
# --------------------------------------------------------

import argparse
import collections.abc
import os
from typing import Any, Dict

import yaml

from utils import logger
from utils.exceptions import ConfigError

YAML_EXTENSIONS = (".yaml", ".yml")


def flatten_yaml_as_dict(d, parent_key="", sep="."):
    items = []
    for k, v in d.items():
        new_key = parent_key + sep + k if parent_key else k
        if isinstance(v, collections.abc.MutableMapping):
            items.extend(flatten_yaml_as_dict(v, new_key, sep=sep).items())
        else:
            items.append((new_key, v))
    return dict(items)


def _read_flat_config(config_file_name: str) -> Dict[str, Any]:
    """``key = value`` lines; ``#`` starts a comment. Values stay raw text."""
    cfg = {}
    with open(config_file_name, "r") as f:
        for line_no, line in enumerate(f, start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ConfigError(
                    "{}:{}: expected key = value. Got: {}".format(
                        config_file_name, line_no, line
                    )
                )
            key, value = line.split("=", 1)
            cfg[key.strip()] = value.strip()
    return cfg


def read_config_file(config_file_name: str) -> Dict[str, Any]:
    """Flat ``{dotted.key: value}`` view of a YAML or ``key = value`` file."""
    if not os.path.isfile(config_file_name):
        raise ConfigError(
            "Configuration file does not exists at {}".format(config_file_name)
        )
    if config_file_name.endswith(YAML_EXTENSIONS):
        with open(config_file_name, "r") as yaml_file:
            try:
                cfg = yaml.safe_load(yaml_file) or {}
            except yaml.YAMLError as exc:
                raise ConfigError(
                    "Error while loading config file: {}. Error message: {}".format(
                        config_file_name, str(exc)
                    )
                )
        if not isinstance(cfg, dict):
            raise ConfigError(
                "Config file {} should hold a mapping".format(config_file_name)
            )
        cfg = flatten_yaml_as_dict(cfg)
    else:
        cfg = _read_flat_config(config_file_name)
    # option names may be written with dashes, as on the command line
    return {k.replace("-", "_"): v for k, v in cfg.items()}


def _scalar(option: argparse.Action, value: Any) -> Any:
    if option.type is None or value is None:
        return value
    if isinstance(value, str) and option.type is not str:
        value = yaml.safe_load(value)
    return option.type(value)


def coerce_value(option: argparse.Action, value: Any) -> Any:
    """Type a config value the way argparse would type the same command-line value."""
    try:
        if isinstance(option, (argparse._StoreTrueAction, argparse._StoreFalseAction)):
            value = yaml.safe_load(value) if isinstance(value, str) else value
            if not isinstance(value, bool):
                raise ValueError("expected true or false")
            return value
        if option.nargs in ["+", "*"]:
            if isinstance(value, str):
                value = value.strip().strip("[]")
                value = [v.strip() for v in value.split(",") if v.strip()]
            elif not isinstance(value, (list, tuple)):
                value = [value]
            return [
                v if isinstance(v, (list, tuple)) else _scalar(option, v) for v in value
            ]
        return _scalar(option, value)
    except (TypeError, ValueError, yaml.YAMLError) as e:
        raise ConfigError(
            "Invalid value for {}: {}. {}".format(option.dest, value, e)
        )


def load_config_file(
    parser: argparse.ArgumentParser, config_file_name: str
) -> argparse.Namespace:
    """Namespace holding the typed values of ``config_file_name``.

    Unknown keys are reported and ignored.
    """
    actions = {a.dest: a for a in parser._actions}
    namespace = argparse.Namespace()
    for key, value in read_config_file(config_file_name).items():
        if key not in actions:
            logger.warning("Unknown config key ignored: {}".format(key))
            continue
        typed = coerce_value(actions[key], value)
        choices = actions[key].choices
        if choices is not None and typed not in choices:
            raise ConfigError(
                "Invalid value for {}: {}. Supported: {}".format(key, typed, list(choices))
            )
        setattr(namespace, key, typed)
    return namespace
