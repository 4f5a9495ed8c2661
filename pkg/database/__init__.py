"""Database package: the SQLite run ledger."""

from .ledger import (
    DB_PATH,
    init_db,
    record_manifest,
    get_manifests,
    find_manifests_by_config_hash,
    get_output_hashes,
)

__all__ = [
    'DB_PATH',
    'init_db',
    'record_manifest',
    'get_manifests',
    'find_manifests_by_config_hash',
    'get_output_hashes',
]
