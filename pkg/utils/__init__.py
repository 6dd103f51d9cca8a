"""Utilities package: logging setup and output file helpers."""
