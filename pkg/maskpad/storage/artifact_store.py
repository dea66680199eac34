"""Access to the files of an artifact directory
"""

from pathlib import Path
from storage.handlers.frames import Frames
from storage.handlers.key_values import KeyValues
from storage.handlers.labels import Labels
from storage.handlers.manifest import Manifest
from storage.handlers.run_manifest import RunManifestFile


class ArtifactStore:
    """One artifact directory (a corpus, labels, a checkpoint, scores or a report)"""

    def __init__(self, root):
        """Initialise the store and its handlers

        Args:
            root (str | Path): The artifact directory
        """
        self._root = Path(root)
        self._manifest = Manifest(self._root)
        self._frames = Frames(self._root)
        self._labels = Labels(self._root)
        self._synth_config = KeyValues(self._root, "synth_config.cfg")
        self._run_manifest = RunManifestFile(self._root)

    @property
    def root(self) -> Path:
        """Return the directory

        Returns:
            Path: The artifact directory
        """
        return self._root

    @property
    def manifest(self) -> Manifest:
        """Return the corpus manifest handler

        Returns:
            Manifest: The manifest handler
        """
        return self._manifest

    @property
    def frames(self) -> Frames:
        """Return the frames handler

        Returns:
            Frames: The frames handler
        """
        return self._frames

    @property
    def labels(self) -> Labels:
        """Return the labels handler

        Returns:
            Labels: The labels handler
        """
        return self._labels

    @property
    def synth_config(self) -> KeyValues:
        """Return the handler of the config the corpus was generated from

        Returns:
            KeyValues: The synth config handler
        """
        return self._synth_config

    @property
    def run_manifest(self) -> RunManifestFile:
        """Return the run manifest handler

        Returns:
            RunManifestFile: The run manifest handler
        """
        return self._run_manifest
