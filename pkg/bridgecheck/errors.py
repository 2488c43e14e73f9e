"""
Exception hierarchy for BRIDGEcheck.

Library code raises these; only ``main.py`` turns them into exit codes.
"""

from typing import Optional, Tuple


class BridgecheckError(Exception):
    """Base class for all errors raised by the toolkit."""

    exit_code: int = 1

    def __init__(self, message: str):
        super().__init__(message)
        self.message = message


class InvalidParameterError(BridgecheckError, ValueError):
    """A parameter is outside its documented range."""


class DomainError(BridgecheckError, ValueError):
    """
    The input is valid but the quantity is undefined on it.

    Raised for disconnected graphs handed to effective resistance or RSE.
    ``separated`` names two vertices in different components when known.
    """

    def __init__(self, message: str, separated: Optional[Tuple[int, int]] = None):
        super().__init__(message)
        self.separated = separated


class ContractViolationError(BridgecheckError, ValueError):
    """A matrix handed to the dense eigensolver breaks its contract."""


class EdgeListFormatError(BridgecheckError, OSError):
    """An edge-list or frequency file is unreadable or malformed."""

    def __init__(self, path: str, line: int, reason: str):
        super().__init__(f"{path}:{line}: {reason}")
        self.path = path
        self.line = line
        self.reason = reason


class UsageError(InvalidParameterError):
    """A command-line option is invalid or does not apply to the command."""

    exit_code = 2


class ManifestFormatError(BridgecheckError):
    """A run manifest is not valid JSON or does not match the manifest schema."""

    def __init__(self, path: str, reason: str):
        super().__init__(f"{path}: {reason}")
        self.path = path
        self.reason = reason
