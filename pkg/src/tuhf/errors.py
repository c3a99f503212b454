"""Shared exception hierarchy.

Input-format problems (bad literals, malformed files) are kept apart
from domain errors (well-formed data violating an operation's contract)
so the command-line driver can map them to distinct exit codes.
"""


class TuhfError(Exception):
    """Base class for every library error."""


class FormatError(TuhfError):
    """Malformed textual input: literals, descriptors, data files."""


class DomainError(TuhfError):
    """Structurally valid input that violates an operation's contract."""
