"""
Run ledger for the toolkit CLI.
Every CLI run appends its manifest:
- Schema initialization
- Manifest and output-hash storage
- Lookup by configuration hash (reproducibility checks)
"""

import json
import os
from typing import Any, Dict, List, Optional

import aiosqlite

from config import LEDGER_PATH
from utils.manifest import RunManifest
from utils.output import dumps

# Fallback if LEDGER_PATH is not set in environment
DB_PATH = LEDGER_PATH or "data/run_ledger.db"


# ========================================
# Database Initialization
# ========================================

async def init_db(db_path: Optional[str] = None):
    """Initialize the ledger schema."""
    db_path = db_path or DB_PATH
    directory = os.path.dirname(db_path)
    if directory:
        os.makedirs(directory, exist_ok=True)

    async with aiosqlite.connect(db_path) as db:
        await db.execute("""
            CREATE TABLE IF NOT EXISTS runs (
                id INTEGER PRIMARY KEY AUTOINCREMENT,
                started_at TEXT NOT NULL,
                subcommand TEXT NOT NULL,
                tool_version TEXT NOT NULL,
                config_hash TEXT NOT NULL,
                wall_time REAL,
                exit_code INTEGER,
                manifest TEXT NOT NULL
            )
        """)
        await db.execute("""
            CREATE TABLE IF NOT EXISTS outputs (
                run_id INTEGER NOT NULL,
                name TEXT NOT NULL,
                sha256 TEXT NOT NULL,
                PRIMARY KEY (run_id, name),
                FOREIGN KEY (run_id) REFERENCES runs(id)
            )
        """)
        await db.execute("CREATE INDEX IF NOT EXISTS idx_runs_config_hash ON runs(config_hash)")
        await db.commit()


# ========================================
# Manifest Operations
# ========================================

async def record_manifest(manifest: RunManifest, db_path: Optional[str] = None) -> int:
    """Append one run and its output hashes; returns the run id."""
    db_path = db_path or DB_PATH
    async with aiosqlite.connect(db_path) as db:
        cursor = await db.execute("""
            INSERT INTO runs (started_at, subcommand, tool_version, config_hash, wall_time, exit_code, manifest)
            VALUES (?, ?, ?, ?, ?, ?, ?)
        """, (
            manifest.started_at,
            manifest.subcommand,
            manifest.tool_version,
            manifest.config_hash,
            manifest.wall_time,
            manifest.exit_code,
            dumps(manifest.to_dict()),
        ))
        run_id = cursor.lastrowid
        for name, digest in manifest.outputs.items():
            await db.execute(
                "INSERT INTO outputs (run_id, name, sha256) VALUES (?, ?, ?)",
                (run_id, name, digest),
            )
        await db.commit()
        return run_id


async def get_manifests(limit: int = 20, db_path: Optional[str] = None) -> List[Dict[str, Any]]:
    """Most recent runs first."""
    db_path = db_path or DB_PATH
    async with aiosqlite.connect(db_path) as db:
        async with db.execute(
            "SELECT id, manifest FROM runs ORDER BY id DESC LIMIT ?", (limit,)
        ) as cursor:
            rows = await cursor.fetchall()
    return [{"id": row[0], **json.loads(row[1])} for row in rows]


async def find_manifests_by_config_hash(config_hash: str, db_path: Optional[str] = None) -> List[Dict[str, Any]]:
    """All runs sharing a configuration, oldest first."""
    db_path = db_path or DB_PATH
    async with aiosqlite.connect(db_path) as db:
        async with db.execute(
            "SELECT id, manifest FROM runs WHERE config_hash = ? ORDER BY id", (config_hash,)
        ) as cursor:
            rows = await cursor.fetchall()
    return [{"id": row[0], **json.loads(row[1])} for row in rows]


async def get_output_hashes(run_id: int, db_path: Optional[str] = None) -> Dict[str, str]:
    db_path = db_path or DB_PATH
    async with aiosqlite.connect(db_path) as db:
        async with db.execute(
            "SELECT name, sha256 FROM outputs WHERE run_id = ? ORDER BY name", (run_id,)
        ) as cursor:
            rows = await cursor.fetchall()
    return {name: digest for name, digest in rows}
