"""Regression tests for behaviour that must not drift between releases."""
