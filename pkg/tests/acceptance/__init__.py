"""Acceptance tests: end-to-end numerical checks on the cubic and tabulated nonlinearities."""
