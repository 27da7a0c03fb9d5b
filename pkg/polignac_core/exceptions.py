"""
Polignac Toolkit Exception Classes
==================================

Custom exceptions with human-readable messages and actionable suggestions.
Every exception knows the CLI exit code it maps to.
"""

from typing import Any, Dict, List, Optional, Type


class PolignacError(Exception):
    """
    Base exception for all toolkit errors.

    Every error includes:
    - A clear, human-readable message explaining what went wrong
    - A stable error code
    - Suggestions for how to fix the issue
    """

    code: str = "POLIGNAC_ERROR"
    exit_code: int = 5

    SUGGESTIONS: Dict[str, List[str]] = {
        "default": [
            "Re-run with --verbose to see the full log",
        ],
    }

    def __init__(
        self,
        message: str,
        code: Optional[str] = None,
        details: Optional[Dict[str, Any]] = None,
        suggestions: Optional[List[str]] = None,
    ):
        self.message = message
        if code:
            self.code = code
        self.details = details or {}
        self.suggestions = suggestions if suggestions is not None else self.SUGGESTIONS.get("default", [])
        super().__init__(message)

    def _format_message(self) -> str:
        lines = [f"❌ {self.message}"]
        if self.code:
            lines.append(f"   Error Code: {self.code}")
        for key, value in self.details.items():
            lines.append(f"   {key}: {value}")
        if self.suggestions:
            lines.append("")
            lines.append("💡 How to fix:")
            for suggestion in self.suggestions:
                lines.append(f"   • {suggestion}")
        return "\n".join(lines)

    def describe(self) -> str:
        """Multi-line description for terminal output."""
        return self._format_message()

    def __str__(self) -> str:
        return self.message

    def __repr__(self) -> str:
        return f"{self.__class__.__name__}({self.message!r}, code={self.code!r})"


class SieveLimitError(PolignacError):
    """Raised when a sieve limit is outside [3, 2**63 - 1]."""

    code = "SIEVE_LIMIT"
    exit_code = 2

    SUGGESTIONS = {
        "default": [
            "Use a limit of at least 3 (the census needs the pair 2, 3)",
            "Limits above 2**63 - 1 are not supported",
        ],
    }


class AllocationBudgetExceeded(PolignacError):
    """Raised when the sieve segment size cannot be honoured."""

    code = "ALLOCATION_BUDGET"
    exit_code = 2

    SUGGESTIONS = {
        "default": [
            "Pass a positive --segment-size (e.g. 65536)",
            "Check POLIGNAC_SEGMENT_SIZE in your environment",
        ],
    }


class SpecInvalid(PolignacError):
    """
    Raised when a generator spec is malformed.

    Common causes:
    - Explicit list not strictly ascending or containing non-positive values
    - Geometric base or ratio below 2
    - Rough bound below 2
    - Unknown token in the spec mini-language
    """

    code = "SPEC_INVALID"
    exit_code = 2

    SUGGESTIONS = {
        "default": [
            "Spec forms: list:4,6,10 | geom:2,2 | digits | rough:5",
            "Explicit lists must be strictly ascending positive integers",
        ],
    }

    def __init__(self, message: str, token: Optional[str] = None, **kwargs):
        self.token = token
        if token is not None:
            kwargs.setdefault("details", {})["Offending token"] = repr(token)
        super().__init__(message, **kwargs)


class ArithmeticOverflow(PolignacError):
    """Raised when a checked 64-bit operation would wrap."""

    code = "OVERFLOW"
    exit_code = 5

    SUGGESTIONS = {
        "default": [
            "Lower the element count, bound or window so values stay below 2**64",
        ],
    }

    def __init__(self, message: str = "64-bit arithmetic overflow", **kwargs):
        super().__init__(message, **kwargs)


class SourceExhausted(PolignacError):
    """
    Raised when a lazy source runs dry before a construction completes.

    The partial result built so far is available as ``partial``.
    """

    code = "SOURCE_EXHAUSTED"
    exit_code = 4

    SUGGESTIONS = {
        "default": [
            "Supply a longer or unbounded source set",
            "Raise --budget to let the construction pull more elements",
            "Lower --count",
        ],
    }

    def __init__(self, message: str = "Source exhausted", partial: Any = None, **kwargs):
        self.partial = partial
        super().__init__(message, **kwargs)


class TooLarge(PolignacError):
    """Raised when an exhaustive computation exceeds its desk-scale cap."""

    code = "TOO_LARGE"
    exit_code = 2

    SUGGESTIONS = {
        "default": [
            "Exhaustive Ramsey verification is capped at C(n,2) <= 20 edges (n <= 6)",
        ],
    }


class ConfigInvalid(PolignacError):
    """Raised when run parameters violate their preconditions."""

    code = "CONFIG_INVALID"
    exit_code = 2

    SUGGESTIONS = {
        "default": [
            "Check --k, --threshold, --ratio, --window and --k2",
            "IP sets used by the pipeline must have even generators",
        ],
    }


class CacheVersionError(PolignacError):
    """Raised when a census cache file carries an unknown version token."""

    code = "CACHE_VERSION"
    exit_code = 3

    SUGGESTIONS = {
        "default": [
            "Delete the cache file and let it be rebuilt",
            "Only polignac-census,v1 files are understood",
        ],
    }


class CacheFormatError(PolignacError):
    """Raised when a census cache file is structurally broken."""

    code = "CACHE_FORMAT"
    exit_code = 3

    SUGGESTIONS = CacheVersionError.SUGGESTIONS


ERROR_CODE_MAP: Dict[str, Type[PolignacError]] = {
    "SIEVE_LIMIT": SieveLimitError,
    "ALLOCATION_BUDGET": AllocationBudgetExceeded,
    "SPEC_INVALID": SpecInvalid,
    "OVERFLOW": ArithmeticOverflow,
    "SOURCE_EXHAUSTED": SourceExhausted,
    "TOO_LARGE": TooLarge,
    "CONFIG_INVALID": ConfigInvalid,
    "CACHE_VERSION": CacheVersionError,
    "CACHE_FORMAT": CacheFormatError,
}


def exit_code_for(exc: BaseException) -> int:
    """CLI exit code for an exception. Anything unexpected maps to the failure code 5."""
    if isinstance(exc, PolignacError):
        return exc.exit_code
    return 5
