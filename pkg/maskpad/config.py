"""Runtime configuration shared by every module
"""

import json
import re
from functools import lru_cache
from pathlib import Path

PRESETS_FILE = Path(__file__).resolve().parent.parent / "pad_presets.json"

device = "cpu"
# device = "cuda"

float_dtype = "float32"


@lru_cache(maxsize=None)
def load_presets(path: str = None) -> dict:
    """Load the presets file

    Args:
        path (str): Optional path to a presets file. Defaults to pad_presets.json at the
        repository root

    Returns:
        dict: The parsed presets
    """
    presets_path = Path(path) if path is not None else PRESETS_FILE
    with open(presets_path, "r", encoding="utf-8") as presets_file:
        return json.load(presets_file)


def package_version() -> str:
    """The version string kept in this package's __init__.py"""
    init_file = Path(__file__).resolve().parent / "__init__.py"
    match = re.search(r'__version__ = "(\d+\.\d+\.\d+)"', init_file.read_text(encoding="utf-8"))
    return match.group(1) if match else "unknown"
