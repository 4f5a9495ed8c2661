"""Utilities package: logging setup, CSV/JSON emission and run manifests."""

from .log import configure_logging
from .manifest import RunManifest, config_hash, sha256_file, to_utc_iso_z, verify_outputs
from .output import dumps, format_value, jsonable, write_csv, write_gnuplot_script, write_json

__all__ = [
    'RunManifest',
    'config_hash',
    'configure_logging',
    'dumps',
    'format_value',
    'jsonable',
    'sha256_file',
    'to_utc_iso_z',
    'verify_outputs',
    'write_csv',
    'write_gnuplot_script',
    'write_json',
]
