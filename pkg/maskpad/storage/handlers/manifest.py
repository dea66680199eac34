"""Read and write the corpus manifest CSV `video_id,identity,category,medium,n_frames,path`
"""

import csv
from pathlib import Path
from classes.manifest_row import ManifestRow
from storage.handlers.artifact_handler import ArtifactHandler

MANIFEST_FIELDS = ["video_id", "identity", "category", "medium", "n_frames", "path"]


def write_manifest(path, rows: list):
    """Write manifest rows in the order given

    Args:
        path (str | Path): Destination CSV
        rows (list): ManifestRow entries
    """
    with open(path, "w", newline="", encoding="utf-8") as manifest_file:
        writer = csv.writer(manifest_file, lineterminator="\n")
        writer.writerow(MANIFEST_FIELDS)
        for row in rows:
            writer.writerow(
                [row.video_id, row.identity, row.category.value, row.medium.value, row.n_frames, row.path]
            )


def read_manifest(path) -> list:
    """Read a manifest CSV

    Args:
        path (str | Path): The CSV to read

    Raises:
        ValueError: Raised when the header does not match the manifest format

    Returns:
        list: ManifestRow entries in file order
    """
    with open(Path(path), "r", newline="", encoding="utf-8") as manifest_file:
        reader = csv.DictReader(manifest_file)
        if reader.fieldnames != MANIFEST_FIELDS:
            raise ValueError(
                f"Manifest header {reader.fieldnames} does not match {MANIFEST_FIELDS}"
            )
        return [ManifestRow(**line) for line in reader]


class Manifest(ArtifactHandler):
    """The manifest of a corpus directory"""

    def __init__(self, context):
        """Initialise the class

        Args:
            context (Path): The corpus directory
        """
        super().__init__(context, file_name="manifest.csv")

    def read(self) -> list:
        """Read every manifest row"""
        return read_manifest(self.path)

    def write(self, rows: list):
        """Replace the manifest"""
        write_manifest(self.path, rows)
