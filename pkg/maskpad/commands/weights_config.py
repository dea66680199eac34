"""Region weight configs shared by the labels, score and ablation commands
"""

from classes.grids import RegionWeights
from commands.command_wrapper import InvalidInputError, load_config
from verification.config_checking import WEIGHTS_CONFIG_FORMAT


def load_weights(path) -> tuple:
    """(RegionWeights, normalize flag) from a weights config, presets for missing keys"""
    raw = load_config(path, WEIGHTS_CONFIG_FORMAT)
    defaults = RegionWeights.from_presets()
    try:
        weights = RegionWeights(
            eye=float(raw.get("eye", defaults.eye)),
            mask=float(raw.get("mask", defaults.mask)),
            other=float(raw.get("other", defaults.other)),
        )
    except ValueError as error:
        raise InvalidInputError(str(error)) from error
    return weights, raw.get("normalize", "false") == "true"
