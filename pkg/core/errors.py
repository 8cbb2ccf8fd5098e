"""
Exception hierarchy shared by every package.
"""

from typing import Any, Optional


class PairingCalcError(Exception):
    """Base class for all library errors."""


class NonIntegrablePiece(PairingCalcError):
    """A density piece is not absolutely integrable on its sub-interval."""

    def __init__(self, piece: Any, lo: float, hi: float):
        self.piece = piece
        self.lo = lo
        self.hi = hi
        super().__init__(f"{piece!r} is not integrable on ({lo}, {hi})")


class UndefinedAtAtom(PairingCalcError):
    """An integrand jumps at an atom and has no point value there."""

    def __init__(self, location: float):
        self.location = location
        super().__init__(f"function undefined at atom x={location}")


class OscillatoryPiece(PairingCalcError):
    """A piece has no one-sided limit at a point."""


class UnsupportedPiece(PairingCalcError):
    """An operation is not available for this piece family."""


class IndeterminateForm(PairingCalcError):
    """u^λ would be ∞ − ∞ with both weights nonzero."""

    def __init__(self, location: float):
        self.location = location
        super().__init__(f"indeterminate ∞ − ∞ at x={location}")


class NotBV(PairingCalcError):
    """A function is not of bounded variation on its domain."""


class NotInBVA(PairingCalcError):
    """u·A is not BV, so u is not in BV^{A,λ}."""


class UnknownEntry(PairingCalcError):
    """Unknown catalog entry."""


class BadParams(PairingCalcError):
    """Invalid parameters for an entry or operation."""


class QuadratureFailure(PairingCalcError):
    """Adaptive quadrature did not reach the requested tolerance."""


class NotIntegrable(PairingCalcError):
    """u^λ is not integrable against |A| or |div A|."""

    def __init__(self, term: str, detail: Optional[str] = None):
        self.term = term
        message = f"divergent term: {term}"
        if detail:
            message += f" ({detail})"
        super().__init__(message)


class NoClosedForm(PairingCalcError):
    """The field has no closed-form normal traces."""


class UnboundedField(PairingCalcError):
    """The field has no finite essential supremum."""


class ExceptionalPoint(PairingCalcError):
    """The point lies in the exceptional set N_t."""

    def __init__(self, x: Any, t: float):
        self.x = x
        self.t = t
        super().__init__(f"x={x} lies in N_t for t={t}")


class HypothesisFailed(PairingCalcError):
    """A coarea hypothesis fails at a level t."""

    def __init__(self, t: float, mass: float, reason: str = ""):
        self.t = t
        self.mass = mass
        self.reason = reason
        super().__init__(f"hypothesis fails at t={t} with mass {mass} {reason}")


class ShapeMismatch(PairingCalcError):
    """Grid shapes do not agree."""


class BudgetExceeded(PairingCalcError):
    """The solver ran out of iterations before reaching tolerance."""

    def __init__(self, best: Any, energy: float, residual: float):
        self.best = best
        self.energy = energy
        self.residual = residual
        super().__init__(
            f"budget exhausted: best energy {energy:.6g}, residual {residual:.3g}"
        )


class ConfigError(PairingCalcError):
    """Scenario configuration is invalid."""


class CheckFailure(PairingCalcError):
    """One or more checks failed."""
