"""Exception classes shared by every stage of the pipeline."""

from __future__ import annotations


class PosetError(ValueError):
    """Bad input: malformed poset, element out of range, non-ideal, etc."""


class ParseError(PosetError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class LabelingError(PosetError):
    """The operation requires a naturally labeled poset."""


class CapExceeded(RuntimeError):
    """An enumeration grew past its configured cap.

    No partial result is returned; ``count`` is how many items had been
    produced when the cap tripped.
    """

    def __init__(self, what: str, cap: int, count: int):
        self.what = what
        self.cap = cap
        self.count = count
        super().__init__(f"{what}: cap {cap} exceeded (reached {count})")


class TheoremViolation(RuntimeError):
    """An identity that must hold for every finite poset failed.

    This always indicates a bug (or a corrupted input object); callers
    should treat it as fatal.
    """
