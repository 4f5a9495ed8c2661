"""
Integration tests for the run ledger.
Tests schema creation, manifest storage and lookups against a temporary SQLite file.
"""

import os
import tempfile
import unittest

import aiosqlite

from database import (
    find_manifests_by_config_hash,
    get_manifests,
    get_output_hashes,
    init_db,
    record_manifest,
)
from utils import RunManifest, write_csv


class TestRunLedger(unittest.IsolatedAsyncioTestCase):
    """Integration tests for ledger round trips."""

    async def asyncSetUp(self):
        self.temp_dir = tempfile.TemporaryDirectory()
        self.db_path = os.path.join(self.temp_dir.name, 'nested', 'ledger.db')
        await init_db(self.db_path)

    async def asyncTearDown(self):
        self.temp_dir.cleanup()

    def _manifest(self, b=0.0, exit_code=0):
        manifest = RunManifest(subcommand='regime', config={'b': b})
        path = write_csv(os.path.join(self.temp_dir.name, f'out_{b}.csv'), ['b'], [(b,)])
        manifest.add_output(path)
        manifest.exit_code = exit_code
        manifest.wall_time = 0.5
        return manifest

    async def test_schema_created(self):
        """Test that init_db creates both tables and is idempotent."""
        await init_db(self.db_path)
        async with aiosqlite.connect(self.db_path) as db:
            async with db.execute("SELECT name FROM sqlite_master WHERE type = 'table'") as cursor:
                tables = {row[0] for row in await cursor.fetchall()}
        self.assertIn('runs', tables)
        self.assertIn('outputs', tables)

    async def test_record_and_read_back(self):
        """Test that a stored manifest is returned with its id."""
        manifest = self._manifest()
        run_id = await record_manifest(manifest, self.db_path)
        rows = await get_manifests(db_path=self.db_path)
        self.assertEqual(len(rows), 1)
        self.assertEqual(rows[0]['id'], run_id)
        self.assertEqual(rows[0]['subcommand'], 'regime')
        self.assertEqual(rows[0]['config_hash'], manifest.config_hash)
        self.assertEqual(rows[0]['exit_code'], 0)

    async def test_most_recent_first(self):
        """Test ordering and the limit of get_manifests."""
        for b in (0.0, 1.0, 2.0):
            await record_manifest(self._manifest(b), self.db_path)
        rows = await get_manifests(limit=2, db_path=self.db_path)
        self.assertEqual([row['config']['b'] for row in rows], [2.0, 1.0])

    async def test_lookup_by_config_hash(self):
        """Test that repeated configurations are found together, oldest first."""
        first = await record_manifest(self._manifest(1.0), self.db_path)
        await record_manifest(self._manifest(2.0), self.db_path)
        second = await record_manifest(self._manifest(1.0, exit_code=3), self.db_path)
        matches = await find_manifests_by_config_hash(self._manifest(1.0).config_hash, self.db_path)
        self.assertEqual([row['id'] for row in matches], [first, second])
        self.assertEqual(matches[1]['exit_code'], 3)

    async def test_output_hashes(self):
        """Test that output hashes are stored per run."""
        manifest = self._manifest(0.5)
        run_id = await record_manifest(manifest, self.db_path)
        self.assertEqual(await get_output_hashes(run_id, self.db_path), manifest.outputs)
        self.assertEqual(await get_output_hashes(run_id + 1, self.db_path), {})


if __name__ == "__main__":
    unittest.main()
