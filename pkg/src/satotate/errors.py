"""Exception hierarchy shared by the engine, analyzer and CLI."""


class SatoTateError(Exception):
    """Base class for all errors raised by this package."""


class SpecError(SatoTateError, ValueError):
    """A group/representation description is malformed or inconsistent.

    ``where`` is a dotted field path (``group.factors[1].n``) or a
    ``line:col`` location when known.
    """

    def __init__(self, message: str, where: str | None = None):
        self.where = where
        self.message = message
        super().__init__(f"{where}: {message}" if where else message)


class CatalogError(SpecError):
    """Unknown catalog name or a corrupt catalog data file."""


class EvaluationError(SatoTateError):
    """An evaluator could not produce a value.

    ``cell`` is the (a, b) moment index being computed, when applicable.
    """

    def __init__(self, message: str, cell: tuple[int, int] | None = None):
        self.cell = cell
        super().__init__(f"cell {cell}: {message}" if cell is not None else message)


class UnsupportedError(EvaluationError):
    """The group/representation combination is outside the supported family."""


class ConsistencyError(EvaluationError):
    """An exact computation produced an impossible intermediate (negative or non-integral)."""
