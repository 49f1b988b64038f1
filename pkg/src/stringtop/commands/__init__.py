"""
Command modules, one per command group.
"""

__all__ = ["command_algebra", "command_hochschild", "command_spectral"]

from . import command_algebra, command_hochschild, command_spectral
