from __future__ import annotations


class GhrecError(Exception):
    """Base error carrying a stable machine-readable ``code``."""

    def __init__(self, code: str, message: str = "", witness=None):
        self.code = code
        self.witness = witness
        super().__init__(f"{code}: {message}" if message else code)


class InputError(GhrecError):
    """Malformed or inconsistent input (CLI exit code 3)."""


class ConstructionError(GhrecError):
    """A constructive step produced something that does not verify."""
