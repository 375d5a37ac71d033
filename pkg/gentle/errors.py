"""
Exception types for the gentle-phi toolkit

User input problems also derive from ValueError so callers that only know
about ValueError keep working.
"""

from dataclasses import dataclass
from typing import List, Optional


@dataclass(frozen=True)
class Violation:
    """One failed check on a candidate presentation"""
    code: str
    message: str
    vertex: Optional[str] = None
    arrow: Optional[str] = None
    relation: Optional[int] = None
    location: Optional[str] = None

    def describe(self) -> str:
        prefix = f"{self.location}: " if self.location else ""
        return f"{prefix}[{self.code}] {self.message}"


class GentleError(Exception):
    """Base class for every error raised by the package"""


class InvalidPresentation(GentleError, ValueError):
    """Raised by build_presentation with the full list of violations"""

    def __init__(self, violations: List[Violation]):
        self.violations = list(violations)
        summary = "; ".join(v.describe() for v in self.violations[:3])
        more = len(self.violations) - 3
        if more > 0:
            summary += f" (+{more} more)"
        super().__init__(f"invalid presentation: {summary}")


class QuiverFileError(GentleError, ValueError):
    """Problem in a .quiver file, with 1-based line and column"""

    def __init__(self, message: str, line: int, col: int = 1):
        self.line = line
        self.col = col
        self.reason = message
        super().__init__(f"line {line}, col {col}: {message}")


class QuiverSyntaxError(QuiverFileError):
    pass


class UndeclaredLabel(QuiverFileError):
    def __init__(self, label: str, line: int, col: int = 1):
        self.label = label
        super().__init__(f"undeclared label '{label}'", line, col)


class DuplicateDeclaration(QuiverFileError):
    def __init__(self, label: str, line: int, col: int = 1):
        self.label = label
        super().__init__(f"'{label}' declared twice", line, col)


class InconsistentSigns(GentleError):
    """The sigma/epsilon parity constraints have no solution"""


class MatchFailure(GentleError):
    """A thread has no partner under the matching rules"""


class IsolatedVertex(GentleError):
    """Signs of the trivial threads of the one-vertex algebra live on their tag"""


class InconsistentInvariant(GentleError):
    """Two computations that must agree did not"""


class NotOneCycle(GentleError):
    def __init__(self, cycles: int):
        self.cycles = cycles
        super().__init__(f"quiver has {cycles} cycles, expected exactly 1")


class BadParameters(GentleError, ValueError):
    pass


class DepthTooSmall(GentleError, ValueError):
    pass


class WindowExhausted(GentleError):
    """An orbit walked past the finite window of the expansion"""


class GenerationFailed(GentleError):
    def __init__(self, attempts: int, reason: str = ""):
        self.attempts = attempts
        detail = f": {reason}" if reason else ""
        super().__init__(f"no gentle presentation found after {attempts} attempts{detail}")
