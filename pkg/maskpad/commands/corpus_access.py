"""Open a corpus directory written by the synth command
"""

import logging
from commands.command_wrapper import MissingInputError, require_path
from storage.artifact_store import ArtifactStore

logger = logging.getLogger(__name__)


def open_corpus(path) -> tuple:
    """The store of a corpus directory and its manifest rows

    Raises:
        MissingInputError: Raised when the directory or its manifest does not exist

    Returns:
        tuple: (ArtifactStore, list of ManifestRow)
    """
    store = ArtifactStore(require_path(path, "Corpus directory"))
    if not store.manifest.exists():
        raise MissingInputError(f"Corpus {path} has no manifest.csv")
    manifest = store.manifest.read()
    logger.info("Using corpus %s with %d videos", path, len(manifest))
    return store, manifest


def frame_samples(store: ArtifactStore, rows: list):
    """Iterate over every frame of the given videos"""
    for row in rows:
        yield from store.frames.load_video(row)
