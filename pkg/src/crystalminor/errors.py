"""Exception types shared across the package.

Every error raised on purpose by this library derives from CrystalMinorError,
so callers (and the command line driver) can catch domain failures without
swallowing genuine bugs.
"""

from __future__ import annotations


class CrystalMinorError(Exception):
    """Base class for all errors raised deliberately by this package."""


class ColorOutOfRange(CrystalMinorError):
    """A crystal color i was outside [1, r]."""

    def __init__(self, i: int, r: int):
        super().__init__(f"color {i} out of range [1, {r}]")
        self.i = i
        self.r = r


class CapExceeded(CrystalMinorError):
    """A graph search visited more nodes than the configured cap."""

    def __init__(self, cap: int):
        super().__init__(f"node cap {cap} exceeded")
        self.cap = cap


class NotTauRenderable(CrystalMinorError):
    """A variable has no single-index alias under the current rank."""

    def __init__(self, var):
        super().__init__(f"{var} has no tau alias")
        self.var = var


class MissingAssignment(CrystalMinorError):
    """Evaluation hit a variable with no assigned value."""

    def __init__(self, var):
        super().__init__(f"no value assigned to {var}")
        self.var = var


class ZeroAssignment(CrystalMinorError):
    """Evaluation hit a variable assigned zero (inverses would blow up)."""

    def __init__(self, var):
        super().__init__(f"{var} assigned zero; all values must be invertible")
        self.var = var


class NotInTorus(CrystalMinorError):
    """A diagonal vector failed the torus constraint (product must be 1)."""

    def __init__(self, msg: str = "diagonal entries must be nonzero with product 1"):
        super().__init__(msg)


class IndexOutOfRange(CrystalMinorError):
    """A word position or mutation direction was not valid."""

    def __init__(self, k, what: str = "index"):
        super().__init__(f"{what} {k} out of range")
        self.k = k


class InvalidExtension(CrystalMinorError):
    """A word cannot be extended the way a truncation check requires."""


class RankTooSmall(CrystalMinorError):
    """A path label needs variables that do not exist at this rank."""

    def __init__(self, msg: str):
        super().__init__(msg)
