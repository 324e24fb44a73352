"""Configuration module for the polynomial eigenvalue toolkit."""

from .settings import RunConfig, Settings, get_settings

__all__ = ["RunConfig", "Settings", "get_settings"]
