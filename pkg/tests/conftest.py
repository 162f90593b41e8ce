"""Shared pytest configuration."""

from hypothesis import settings as hsettings

# Same examples on every run
hsettings.register_profile("workbench", derandomize=True)
hsettings.load_profile("workbench")
