"""Flat key=value text files with # comments and blank lines
"""

from storage.handlers.artifact_handler import ArtifactHandler


def parse_key_values(text: str, source: str = "config") -> dict:
    """Parse key=value lines

    Raises:
        ValueError: Raised on a line without '=', an empty key or a repeated key

    Returns:
        dict: Raw string values in file order
    """
    values = {}
    for number, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"Line {number} of {source} is not 'key=value': '{line}'")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ValueError(f"Line {number} of {source} has an empty key")
        if key in values:
            raise ValueError(f"Key '{key}' appears twice in {source}")
        values[key] = value
    return values


def read_key_values(path) -> dict:
    """Read a key=value file"""
    with open(path, "r", encoding="utf-8") as config_file:
        return parse_key_values(config_file.read(), source=str(path))


def format_value(value) -> str:
    """Text form of a config value: lowercase booleans, comma-joined sequences"""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (tuple, list)):
        return ",".join(format_value(item) for item in value)
    return str(value)


def write_key_values(path, values: dict):
    """Write a key=value file in the given key order"""
    with open(path, "w", encoding="utf-8") as config_file:
        for key, value in values.items():
            config_file.write(f"{key}={format_value(value)}\n")


class KeyValues(ArtifactHandler):
    """A key=value file inside an artifact directory"""

    def read(self) -> dict:
        """Read the file"""
        return read_key_values(self.path)

    def write(self, values: dict):
        """Replace the file"""
        write_key_values(self.path, values)
