"""Wrapper turning command failures into exit codes and cleaning up partial outputs
"""

import logging
import shutil
from dataclasses import dataclass, field
from functools import wraps
from pathlib import Path
from config import package_version
from storage.handlers.key_values import read_key_values
from storage.artifact_store import ArtifactStore
from storage.handlers.run_manifest import RunManifest, content_hash
from verification.config_checking import check_config

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_INVALID_INPUT = 2
EXIT_MISSING_INPUT = 3


class InvalidInputError(ValueError):
    """A config file or command-line value is not acceptable"""


class MissingInputError(FileNotFoundError):
    """A required input artifact does not exist"""


@dataclass
class CommandResult:
    """What a command read, recorded in the run manifest of its output directory"""

    inputs: list = field(default_factory=list)
    config_paths: list = field(default_factory=list)
    seeds: list = field(default_factory=list)


def load_config(path, expected_format: dict) -> dict:
    """Read and check a key=value config file

    Args:
        path (str | Path | None): The config file, None for an empty config
        expected_format (dict): Key to regex pattern

    Raises:
        MissingInputError: Raised when the file does not exist
        InvalidInputError: Raised when a key is unknown or a value does not match its pattern

    Returns:
        dict: Raw string values
    """
    if path is None:
        return {}
    if not Path(path).is_file():
        raise MissingInputError(f"Config file {path} does not exist")
    try:
        config = read_key_values(path)
    except ValueError as error:
        raise InvalidInputError(str(error)) from error
    result = check_config(expected_format, config)
    if result is not True:
        raise InvalidInputError(result + ". The config should be in the format: " + str(expected_format))
    return config


def require_path(path, description: str) -> Path:
    """Raise MissingInputError unless the path exists"""
    if path is None or not Path(path).exists():
        raise MissingInputError(f"{description} {path} does not exist")
    return Path(path)


def _prepare_output(out) -> bool:
    out = Path(out)
    if out.exists() and (not out.is_dir() or any(out.iterdir())):
        raise InvalidInputError(f"Output directory {out} already exists and is not empty")
    created = not out.exists()
    out.mkdir(parents=True, exist_ok=True)
    return created


def _remove_output(out, created: bool):
    out = Path(out)
    if not out.exists():
        return
    if created:
        shutil.rmtree(out)
        return
    for child in out.iterdir():
        if child.is_dir():
            shutil.rmtree(child)
        else:
            child.unlink()


def _arguments(args) -> dict:
    return {key: str(value) for key, value in sorted(vars(args).items()) if key != "handler"}


def command(name: str):
    """Wrapper function to run a command against its --out directory

    The wrapped function takes the parsed arguments and returns a CommandResult. The wrapper
    refuses a non-empty --out, writes run_manifest.json on success and removes what the command
    created on failure.

    Args:
        name (str): The command name recorded in the run manifest
    """

    def decorator(func):
        @wraps(func)
        def wrapper(args) -> int:
            created = None
            try:
                created = _prepare_output(args.out)
                result = func(args)
                ArtifactStore(args.out).run_manifest.write(
                    RunManifest(
                        command=name,
                        arguments=_arguments(args),
                        config_paths=[str(path) for path in result.config_paths],
                        seeds=list(result.seeds),
                        output_dir=str(args.out),
                        version=package_version(),
                        input_hash=content_hash(result.inputs),
                    )
                )
                logger.info("%s finished, outputs in %s", name, args.out)
                return EXIT_OK
            except InvalidInputError as error:
                logger.error("%s: %s", name, error)
                code = EXIT_INVALID_INPUT
            except (MissingInputError, FileNotFoundError) as error:
                logger.error("%s: %s", name, error)
                code = EXIT_MISSING_INPUT
            except Exception as error:  # pylint: disable=broad-except
                logger.exception("%s failed: %s", name, error)
                code = EXIT_FAILURE
            if created is not None:
                _remove_output(args.out, created)
            return code

        return wrapper

    return decorator
