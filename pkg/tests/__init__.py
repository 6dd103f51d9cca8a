"""Tests for the elliptic kernel, the surface families, the harness and the CLI."""
