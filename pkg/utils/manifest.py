"""
Run manifests: the effective configuration of one CLI run, the outputs it
wrote and their sha256 hashes. Wall-clock data lives here only, so data files
stay byte-identical between reruns of the same configuration.
"""

import hashlib
import json
import platform
from dataclasses import dataclass, field
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Dict, Optional

import numpy as np
import scipy

from constants import TOOL_VERSION
from utils.output import PathLike, jsonable, write_json


def to_utc_iso_z(dt: Optional[datetime] = None) -> str:
    """UTC ISO8601 string with trailing 'Z' and seconds precision; naive input is taken as UTC."""
    dt = dt or datetime.now(timezone.utc)
    if dt.tzinfo is None:
        dt = dt.replace(tzinfo=timezone.utc)
    return dt.astimezone(timezone.utc).isoformat(timespec="seconds").replace("+00:00", "Z")


def sha256_file(path: PathLike) -> str:
    digest = hashlib.sha256()
    with open(path, "rb") as handle:
        for chunk in iter(lambda: handle.read(1 << 16), b""):
            digest.update(chunk)
    return digest.hexdigest()


def config_hash(config: Dict[str, Any]) -> str:
    """Hash of the canonical JSON form of a configuration snapshot."""
    canonical = json.dumps(jsonable(config), sort_keys=True, separators=(",", ":"))
    return hashlib.sha256(canonical.encode("utf-8")).hexdigest()


@dataclass
class RunManifest:
    subcommand: str
    config: Dict[str, Any]
    grid: Dict[str, Any] = field(default_factory=dict)
    tool_version: str = TOOL_VERSION
    started_at: str = field(default_factory=to_utc_iso_z)
    wall_time: Optional[float] = None
    outputs: Dict[str, str] = field(default_factory=dict)
    exit_code: Optional[int] = None

    @property
    def config_hash(self) -> str:
        return config_hash({"subcommand": self.subcommand, **self.config})

    def add_output(self, path: PathLike) -> str:
        """Register a written file under its name; returns its hash."""
        path = Path(path)
        digest = sha256_file(path)
        self.outputs[path.name] = digest
        return digest

    def to_dict(self) -> Dict[str, Any]:
        return {
            "subcommand": self.subcommand,
            "tool_version": self.tool_version,
            "config": self.config,
            "config_hash": self.config_hash,
            "grid": self.grid,
            "started_at": self.started_at,
            "wall_time": self.wall_time,
            "exit_code": self.exit_code,
            "outputs": dict(sorted(self.outputs.items())),
            "environment": {
                "python": platform.python_version(),
                "numpy": np.__version__,
                "scipy": scipy.__version__,
            },
        }

    def write(self, path: PathLike) -> Path:
        return write_json(path, self.to_dict())


def verify_outputs(manifest: Dict[str, Any], directory: PathLike) -> Dict[str, bool]:
    """Recompute the hash of every listed output in `directory` against the manifest."""
    directory = Path(directory)
    result = {}
    for name, digest in manifest.get("outputs", {}).items():
        target = directory / name
        result[name] = target.exists() and sha256_file(target) == digest
    return result
