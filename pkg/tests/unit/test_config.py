"""
Unit tests for config module.
Tests environment variable loading and configuration.
"""

import importlib
import os
import unittest
from unittest.mock import patch

import config


class TestConfig(unittest.TestCase):
    """Test suite for configuration loading."""

    def tearDown(self):
        # Restore module values from the real environment
        importlib.reload(config)

    @patch.dict(os.environ, {
        'RDT_DX': '0.05',
        'RDT_DT': '0.02',
        'RDT_THETA_SCHEME': '1.0',
        'RDT_MAX_T_FACTOR': '500',
        'RDT_THREADS': '4',
        'RDT_LEDGER_PATH': '/tmp/ledger_test.db',
    })
    def test_config_loads_environment_variables(self):
        """Test that config module loads environment variables."""
        importlib.reload(config)

        self.assertEqual(config.DX, 0.05)
        self.assertEqual(config.DT, 0.02)
        self.assertEqual(config.THETA_SCHEME, 1.0)
        self.assertEqual(config.MAX_T_FACTOR, 500.0)
        self.assertEqual(config.THREADS, 4)
        self.assertEqual(config.LEDGER_PATH, '/tmp/ledger_test.db')

    def test_config_defaults(self):
        """Test the solver defaults when no RDT_ variables are set."""
        cleared = {k: v for k, v in os.environ.items() if not k.startswith('RDT_')}
        with patch.dict(os.environ, cleared, clear=True), patch('dotenv.load_dotenv'):
            importlib.reload(config)

            self.assertEqual(config.DX, 0.02)
            self.assertEqual(config.DT, 0.01)
            self.assertEqual(config.THETA_SCHEME, 0.5)
            self.assertEqual(config.STARTUP_STEPS, 4)
            self.assertEqual(config.MAX_T_FACTOR, 2000.0)
            self.assertEqual(config.THREADS, 1)
            self.assertEqual(config.LOG_LEVEL, 'INFO')

    def test_ledger_path_optional(self):
        """Test that the ledger path may be unset (ledger.py supplies a default)."""
        cleared = {k: v for k, v in os.environ.items() if k != 'RDT_LEDGER_PATH'}
        with patch.dict(os.environ, cleared, clear=True), patch('dotenv.load_dotenv'):
            importlib.reload(config)
            self.assertIsNone(config.LEDGER_PATH)


if __name__ == "__main__":
    unittest.main()
