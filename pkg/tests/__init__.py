"""Tests for the half-line bistable reaction-diffusion toolkit."""
