import sys
from pathlib import Path

sys.path.append(str(Path(__file__).resolve().parent / "maskpad"))

from config import load_presets
from storage.handlers.key_values import read_key_values
from verification.config_checking import (
    MODEL_CONFIG_FORMAT,
    SYNTH_CONFIG_FORMAT,
    TRAIN_CONFIG_FORMAT,
    WEIGHTS_CONFIG_FORMAT,
    check_config,
)

CONFIG_DIR = Path(__file__).resolve().parent / "configs"
FORMATS = {
    "synth_": SYNTH_CONFIG_FORMAT,
    "train_": {**TRAIN_CONFIG_FORMAT, **MODEL_CONFIG_FORMAT},
    "weights_": WEIGHTS_CONFIG_FORMAT,
}
CELLS = [
    "BM0/bona_fide",
    "BM1/bona_fide",
    "AM0/print",
    "AM1/print",
    "AM2/print",
    "AM0/replay",
    "AM1/replay",
    "AM2/replay",
]


def expected_format(path):
    """
    The key=value format a config file is checked against, chosen by its name prefix.

    Args:
        path (Path): The config file.

    Returns:
        dict: Key to regex pattern.
    """
    for prefix, config_format in FORMATS.items():
        if path.name.startswith(prefix):
            return config_format
    raise ValueError(f"{path.name} does not start with one of {sorted(FORMATS)}")


for config_path in sorted(CONFIG_DIR.glob("*.cfg")):
    result = check_config(expected_format(config_path), read_key_values(config_path))
    if result is not True:
        raise ValueError(f"{config_path.name}: {result}")
    print(f"{config_path.name} is valid")

presets = load_presets()

if sorted(presets["crmaVideoProportions"]) != sorted(CELLS):
    raise ValueError("Video proportions must list every category and medium cell exactly once")

if any(value <= 0 for value in presets["regionWeights"].values()):
    raise ValueError("Region weights must be positive")

if not 0.0 <= presets["bpcerTarget"] <= 1.0:
    raise ValueError("The BPCER target must be in [0, 1]")
else:
    print("Presets are valid")
