"""Abstract class for artifact handlers
"""

from abc import ABC
from pathlib import Path


class ArtifactHandler(ABC):
    """Abstract class for artifact handlers"""

    def __init__(self, context, file_name):
        """Initialise the class

        Args:
            context (Path): The artifact directory the handler reads and writes in
            file_name (str): The file (or sub-directory) the handler owns
        """
        self._context = Path(context)
        self._file_name = file_name

    @property
    def path(self) -> Path:
        """Full path of the owned file"""
        return self._context / self._file_name

    def exists(self) -> bool:
        """Whether the owned file has been written"""
        return self.path.exists()
