""" Contains functions for checking key=value config files are valid """

import re
from dataclasses import fields
from verification import regex_patterns as patterns

SYNTH_CONFIG_FORMAT = {
    "n_identities": patterns.POSITIVE_INT,
    "videos_per_identity_per_category": patterns.POSITIVE_INT,
    "frames_per_video": patterns.POSITIVE_INT,
    "seed": patterns.NON_NEGATIVE_INT,
    "attack_texture_strength": patterns.POSITIVE_FLOAT,
    "image_size": patterns.POSITIVE_INT,
    "crma_proportions": patterns.BOOLEAN,
}

TRAIN_CONFIG_FORMAT = {
    "optimizer": patterns.OPTIMIZER,
    "lr": patterns.POSITIVE_FLOAT,
    "weight_decay": patterns.UNIT_FLOAT,
    "gamma": patterns.UNIT_FLOAT,
    "momentum": patterns.UNIT_FLOAT,
    "max_epochs": patterns.POSITIVE_INT,
    "patience": patterns.NON_NEGATIVE_INT,
    "batch_size": patterns.POSITIVE_INT,
    "seed": patterns.NON_NEGATIVE_INT,
    "pal": patterns.BOOLEAN,
    "num_workers": patterns.NON_NEGATIVE_INT,
}

MODEL_CONFIG_FORMAT = {
    "variant": patterns.VARIANT,
    "stem_channels": patterns.POSITIVE_INT,
    "growth_rate": patterns.POSITIVE_INT,
    "block_layers": patterns.POSITIVE_INT_LIST,
    "compression": patterns.UNIT_FLOAT,
    "stage_channels": patterns.POSITIVE_INT_LIST,
    "blocks_per_stage": patterns.POSITIVE_INT_LIST,
    "kernel_sizes": patterns.POSITIVE_INT_LIST,
    "expand_ratio": patterns.POSITIVE_INT,
    "embedding_channels": patterns.POSITIVE_INT,
    "lambda_": patterns.UNIT_FLOAT,
    "input_size": patterns.POSITIVE_INT,
}

WEIGHTS_CONFIG_FORMAT = {
    "eye": patterns.POSITIVE_FLOAT,
    "mask": patterns.POSITIVE_FLOAT,
    "other": patterns.POSITIVE_FLOAT,
    "normalize": patterns.BOOLEAN,
}


def check_config(expected_format, config):
    """Checks the keys of a config are known and every value matches its pattern

    Missing keys are allowed, they take their defaults.

    Args:
        expected_format (dict): Key to regex pattern
        config (dict): Key to raw string value

    Returns:
        bool | str: True when the config is valid, otherwise a message saying what is wrong
    """
    for key, value in config.items():
        if key not in expected_format:
            return "Unknown key '" + key + "', expected one of " + str(sorted(expected_format))
        if not re.match(expected_format[key], value):
            return (
                "Value '"
                + value
                + "' for '"
                + key
                + "' does not match the expected pattern '"
                + expected_format[key]
                + "'"
            )
    return True


def _convert(raw: str, default):
    if isinstance(default, bool):
        return raw == "true"
    if isinstance(default, int):
        return int(raw)
    if isinstance(default, float):
        return float(raw)
    if isinstance(default, tuple):
        return tuple(int(item) for item in raw.split(","))
    return raw


def parse_config(config_class, config: dict, base=None, **overrides):
    """Build a config dataclass from checked raw values, converting each by its default's type

    Args:
        config_class (type): A dataclass whose fields all have defaults
        config (dict): Key to raw string value, keys not in the dataclass are ignored
        base (object): Instance whose values replace the dataclass defaults
        overrides: Already typed values that win over the file, None values are skipped

    Returns:
        object: The dataclass instance
    """
    values = {}
    if base is not None:
        values = {dataclass_field.name: getattr(base, dataclass_field.name) for dataclass_field in fields(config_class)}
    for dataclass_field in fields(config_class):
        if dataclass_field.name in config:
            values[dataclass_field.name] = _convert(config[dataclass_field.name], dataclass_field.default)
    values.update({key: value for key, value in overrides.items() if value is not None})
    return config_class(**values)
