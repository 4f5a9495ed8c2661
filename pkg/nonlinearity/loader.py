"""Read a nonlinearity description from a TOML file (builtin cubic or CSV table)."""

import logging
import sys
from pathlib import Path
from typing import Any, Dict, Union

import numpy as np

from errors import ValidationError
from nonlinearity.model import Nonlinearity
from nonlinearity.reaction import CubicReaction, TabulatedReaction

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

logger = logging.getLogger(__name__)

TABLE_COLUMNS = ("s", "f", "fp")


class ConfigParseError(ValidationError):
    """The nonlinearity file could not be read or is missing required keys."""
    pass


def _read_table(path: Path):
    try:
        data = np.genfromtxt(path, delimiter=",", names=True, dtype=float, comments="#")
    except (OSError, ValueError) as e:
        raise ConfigParseError(f"cannot read table {path}: {e}") from e
    names = data.dtype.names or ()
    missing = [c for c in TABLE_COLUMNS if c not in names]
    if missing:
        raise ConfigParseError(f"table {path} is missing columns {missing} (has {list(names)})")
    columns = {name: np.atleast_1d(data[name]) for name in names}
    if any(np.any(~np.isfinite(columns[c])) for c in TABLE_COLUMNS):
        raise ConfigParseError(f"table {path} has blank or non-numeric entries")
    return columns


def nonlinearity_from_dict(document: Dict[str, Any], base_dir: Union[str, Path] = ".") -> Nonlinearity:
    """Build and validate a Nonlinearity from a parsed config mapping."""
    kind = document.get("kind")
    if kind == "cubic":
        if "alpha" not in document:
            raise ConfigParseError('kind = "cubic" requires alpha')
        try:
            alpha = float(document["alpha"])
        except (TypeError, ValueError) as e:
            raise ConfigParseError(f"alpha must be a number, got {document['alpha']!r}") from e
        return Nonlinearity.from_reaction(CubicReaction(alpha))

    if kind == "table":
        if "path" not in document:
            raise ConfigParseError('kind = "table" requires path')
        path = Path(document["path"])
        if not path.is_absolute():
            path = Path(base_dir) / path
        columns = _read_table(path)
        reaction = TabulatedReaction(
            columns["s"], columns["f"], columns["fp"],
            fpp=columns.get("fpp"), source=str(document["path"]),
        )
        logger.info("loaded %d-row table from %s", len(columns["s"]), path)
        return Nonlinearity.from_reaction(reaction)

    raise ConfigParseError(f'kind must be "cubic" or "table", got {kind!r}')


def load_nonlinearity(path: Union[str, Path]) -> Nonlinearity:
    """Parse a TOML nonlinearity file; relative table paths resolve against its directory."""
    path = Path(path)
    try:
        with open(path, "rb") as handle:
            document = tomllib.load(handle)
    except OSError as e:
        raise ConfigParseError(f"cannot open {path}: {e}") from e
    except tomllib.TOMLDecodeError as e:
        raise ConfigParseError(f"{path} is not valid TOML: {e}") from e
    return nonlinearity_from_dict(document, base_dir=path.parent)
