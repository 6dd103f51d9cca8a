"""Frontend package: the command-line interface."""
