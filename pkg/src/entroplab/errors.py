"""Exception types shared across the package.

Every error carries a stable machine-readable ``code`` (for example
``"SUM_NOT_ONE"`` or ``"UNKNOWN_VARIABLE"``) so the CLI and the tests can
dispatch on failures without parsing messages.
"""

from __future__ import annotations


class LabError(Exception):
    """Invalid input or an unmet operation precondition."""

    def __init__(self, code: str, message: str, witness: dict | None = None):
        super().__init__(message)
        self.code = code
        self.witness = witness


class PreconditionFailed(LabError):
    """The mathematical precondition of an operation fails on this input."""

    def __init__(self, message: str, witness: dict | None = None):
        super().__init__("PRECONDITION_FAILED", message, witness)


class TooLarge(LabError):
    """Input exceeds the size cap of an exhaustive oracle."""

    def __init__(self, message: str):
        super().__init__("TOO_LARGE", message)
