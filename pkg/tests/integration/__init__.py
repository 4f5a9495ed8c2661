"""Integration tests for multi-component interactions."""
