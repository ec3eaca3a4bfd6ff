"""Subcommands of floquet.py. Each module exposes ``setup(cli)``."""
