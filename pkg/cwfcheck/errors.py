"""
Exception hierarchy for cwfcheck.

Every error raised by the kernel and the finite verifiers derives from
CwfCheckError so the CLI can map it onto exit code 2 in one place.
Report-style operations (validate, segal_report, law_harness, ...) never
raise for the conditions they report.
"""

from typing import Any, Dict, Optional, Sequence


class CwfCheckError(Exception):
    """Base exception carrying optional structured details"""

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.details = details or {}


class SimplexError(CwfCheckError, ValueError):
    """Out-of-range index or mismatched domain in the semi-simplex category"""


class SSetError(CwfCheckError, ValueError):
    """Malformed semisimplicial set, horn instance or sset map"""


class SemicatError(CwfCheckError, ValueError):
    """Non-total or non-associative composition table, or a non-functorial action"""


class PreconditionError(CwfCheckError):
    """An operation was called outside its stated pre-condition"""


class ConsistencyError(CwfCheckError):
    """A proven lemma was contradicted; this always indicates a bug"""


class EnumerationBoundError(CwfCheckError):
    """Requested enumeration bounds exceed the feasible range"""


class IllFormedError(CwfCheckError):
    """An expression failed a syntax-directed well-formedness rule"""

    def __init__(self, message: str, path: Sequence[str] = ()):
        self.reason = message
        self.path = tuple(path)
        location = "/".join(self.path) or "<root>"
        super().__init__(f"{message} (at {location})", {"path": list(self.path)})

    def with_prefix(self, label: str) -> "IllFormedError":
        """The same error one node further from the root"""
        clone = type(self).__new__(type(self))
        clone.__dict__.update(self.__dict__)
        clone.path = (label,) + self.path
        clone.details = {"path": list(clone.path)}
        clone.args = (f"{self.reason} (at {'/'.join(clone.path)})",)
        return clone


class TypeMismatchError(IllFormedError):
    """Two types that should be convertible are not"""

    def __init__(self, expected: Any, actual: Any, path: Sequence[str] = ()):
        self.expected = expected
        self.actual = actual
        super().__init__(
            f"type mismatch: expected {expected}, got {actual}", path
        )


class RewriteError(CwfCheckError):
    """Equation pattern does not match, or the rule is not invertible"""


class ParseError(CwfCheckError):
    """Surface syntax error with a source location"""

    def __init__(self, message: str, line: int, column: int):
        self.line = line
        self.column = column
        super().__init__(
            f"{message} at line {line}, column {column}",
            {"line": line, "column": column},
        )


class FormatError(CwfCheckError):
    """Instance file does not follow the documented YAML layout"""
