"""Exception hierarchy. Every error carries a JSON-serialisable witness."""
from typing import Any, Dict, Optional


class LawrenceAtlasError(Exception):
    """Base error for the package."""

    def __init__(self, message: str, witness: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.witness: Dict[str, Any] = dict(witness or {})

    def to_dict(self) -> Dict[str, Any]:
        return {"error": type(self).__name__, "message": self.message, "witness": self.witness}


class InputError(LawrenceAtlasError, ValueError):
    """Malformed input or violated precondition (CLI exit code 2)."""


class CapExceededError(InputError):
    """A desk-scale enumeration cap was exceeded."""

    def __init__(self, cap_name: str, cap: int, size: int):
        super().__init__(
            f"{cap_name} exceeded: size {size} > cap {cap}",
            {"cap": cap_name, "limit": cap, "size": size},
        )


class VerificationError(LawrenceAtlasError, RuntimeError):
    """A theorem hypothesis or an invariant failed (CLI exit code 1)."""
