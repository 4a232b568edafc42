"""Errors raised by the construction and verification layers.

Every error derives from ``SusyQMError`` so callers (the CLI, the
verification WorkChains) can turn any of them into a failed check with a
machine-readable message.
"""


class SusyQMError(Exception):
    """Base class for all package errors."""


# ring
class PoleAtZero(SusyQMError, ValueError):
    pass


class MixedSigns(SusyQMError, ValueError):
    """|f|^2 contains e^{ax} factors, not reducible to Gamma integrals."""


class UnboundParameter(SusyQMError, ValueError):
    """A formal k exponent was used where a numeric value is required."""


# operators
class OrderOverflow(SusyQMError, ValueError):
    pass


class EmptyTestSet(SusyQMError, ValueError):
    pass


class DimensionMismatch(SusyQMError, ValueError):
    pass


# realizations
class ConstraintViolation(SusyQMError):
    def __init__(self, condition: int, residual: float, detail: str = ""):
        self.condition = condition
        self.residual = residual
        self.detail = detail
        message = f"constraint condition {condition} violated (residual {residual:.3e})"
        if detail:
            message += f": {detail}"
        super().__init__(message)


class FormMismatch(SusyQMError):
    """Two assemblies of the same operator disagree."""

    def __init__(self, form: str, residual: float):
        self.form = form
        self.residual = residual
        super().__init__(f"Hamiltonian {form} form differs from the gamma form (max coefficient {residual:.3e})")


class ZeroSuperpotential(SusyQMError, ValueError):
    pass


class UnsupportedGauge(SusyQMError, ValueError):
    pass


class NotInRing(SusyQMError, ValueError):
    """A first-order annihilation condition has no solution inside the ring."""


# superconformal
class NonpositiveOmega(SusyQMError, ValueError):
    pass


class UnboundSlot(SusyQMError, KeyError):
    def __init__(self, slot: str, table: str):
        self.slot = slot
        self.table = table
        super().__init__(f"slot {slot!r} of table {table!r} is not bound")

    def __str__(self):
        return self.args[0]


class LadderAnnihilation(SusyQMError):
    pass


class BadSector(SusyQMError, ValueError):
    pass


# spectral
class ConvergenceFailure(SusyQMError, RuntimeError):
    pass


class PoleOnGrid(SusyQMError, ValueError):
    pass


class AmbiguousCluster(SusyQMError, ValueError):
    pass


class OutOfRegime(SusyQMError, ValueError):
    pass


# cli
class GrammarError(SusyQMError, ValueError):
    """Superpotential text rejected by the grammar; carries the caret column."""

    def __init__(self, message: str, source: str, column: int):
        self.source = source
        self.column = column
        super().__init__(message)

    def diagnostic(self) -> str:
        return f"{self.args[0]}\n  {self.source}\n  {' ' * (self.column - 1)}^"


class NonMonomial(GrammarError):
    pass
