"""Typed failures shared across the library."""

from __future__ import annotations

from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from .padic_core import PadicRational


class PreconditionError(ValueError):
    """An operation was called outside its stated domain."""


class SupportViolationError(ValueError):
    """A mask admits no solution with the requested Fourier support.

    Attributes:
        witness: a point on the first excluded sphere where the candidate
            transform does not vanish.
        magnitude: the offending |value| there.
    """

    def __init__(self, witness: "PadicRational", magnitude: float) -> None:
        self.witness = witness
        self.magnitude = magnitude
        super().__init__(
            f"transform does not vanish on the excluded sphere: "
            f"|value at {witness}| = {magnitude:.3e}"
        )


class NotRefinableError(ValueError):
    """No mask reproduces the function from its own dilates.

    Attributes:
        residual: the smallest achievable max-norm residual.
    """

    def __init__(self, residual: float, tol: float) -> None:
        self.residual = residual
        self.tol = tol
        super().__init__(
            f"not refinable: best residual {residual:.3e} exceeds tol {tol:.1e}"
        )


class UnsupportedConfigurationError(ValueError):
    """Inputs outside the regime the construction is proved for."""


class VerificationError(AssertionError):
    """An object failed its own post-construction verification."""
