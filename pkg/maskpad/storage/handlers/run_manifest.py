"""run_manifest.json: what produced an artifact directory
"""

import hashlib
import json
from dataclasses import asdict, dataclass, field
from pathlib import Path
from storage.handlers.artifact_handler import ArtifactHandler

RUN_MANIFEST_FILE = "run_manifest.json"


def blob_hash(data: bytes) -> str:
    """Git-style object id of a file's bytes"""
    return hashlib.sha1(b"blob %d\0" % len(data) + data).hexdigest()


def _input_files(paths: list) -> list:
    files = []
    for path in paths:
        path = Path(path)
        if path.is_dir():
            files.extend(sorted(child for child in path.rglob("*") if child.is_file()))
        elif path.is_file():
            files.append(path)
        else:
            raise FileNotFoundError(f"Input {path} does not exist")
    return files


def content_hash(paths: list) -> str:
    """SHA-1 over the blob hashes of every input file, directories expanded, in sorted path order"""
    combined = hashlib.sha1()
    for path in sorted(_input_files(paths), key=lambda item: item.as_posix()):
        combined.update(f"{blob_hash(path.read_bytes())} {path.name}\n".encode("utf-8"))
    return combined.hexdigest()


@dataclass
class RunManifest:
    """Command, arguments, configs, seeds and inputs of a run"""

    command: str
    arguments: dict
    config_paths: list = field(default_factory=list)
    seeds: list = field(default_factory=list)
    output_dir: str = ""
    version: str = ""
    input_hash: str = ""


class RunManifestFile(ArtifactHandler):
    """The run manifest of an artifact directory"""

    def __init__(self, context):
        """Initialise the class

        Args:
            context (Path): The artifact directory
        """
        super().__init__(context, file_name=RUN_MANIFEST_FILE)

    def write(self, manifest: RunManifest):
        """Write the manifest as sorted JSON"""
        with open(self.path, "w", encoding="utf-8") as manifest_file:
            json.dump(asdict(manifest), manifest_file, indent=2, sort_keys=True)
            manifest_file.write("\n")

    def read(self) -> RunManifest:
        """Read the manifest back"""
        with open(self.path, "r", encoding="utf-8") as manifest_file:
            return RunManifest(**json.load(manifest_file))
