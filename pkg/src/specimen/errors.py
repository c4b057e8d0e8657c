"""Exception hierarchy shared across the package.

Parse, typing, lexicon, composition and evaluation failures are kept as
distinct classes so the CLI can map them onto exit codes and so tests can
assert on the precise failure mode.
"""

from __future__ import annotations


class SpecimenError(Exception):
    """Base class for every error raised by this package."""


# ---------------------------------------------------------------- parsing


class ParseError(SpecimenError):
    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line = line
        self.col = col
        if line is not None:
            message = f"{line}:{col}: {message}"
        super().__init__(message)


# ----------------------------------------------------------------- typing


class TypeCheckError(SpecimenError):
    """Base class for failures of the syntax-directed type checker."""


class UnboundVariable(TypeCheckError):
    pass


class UnknownConstant(TypeCheckError):
    pass


class ApplicationMismatch(TypeCheckError):
    def __init__(self, expected, got):
        self.expected = expected
        self.got = got
        super().__init__(f"function expects argument of type {expected}, got {got}")


class NotAFunction(TypeCheckError):
    pass


class NotAForall(TypeCheckError):
    pass


class GenericityViolation(TypeCheckError):
    pass


class IllFormedType(TypeCheckError):
    pass


# -------------------------------------------------------------- reduction


class FuelExhausted(SpecimenError):
    def __init__(self, fuel: int):
        self.fuel = fuel
        super().__init__(f"no normal form reached within {fuel} reduction steps")


# ---------------------------------------------------------------- lexicon


class LexiconError(SpecimenError):
    pass


class DuplicateWord(LexiconError):
    pass


class UnknownBaseType(LexiconError):
    pass


class TypeCheckFailure(LexiconError):
    def __init__(self, word: str, detail: str):
        self.word = word
        self.detail = detail
        super().__init__(f"entry {word!r}: {detail}")


class BadCoercion(LexiconError):
    """Coercion term is not an arrow between ground types, or is undeclared."""


# --------------------------------------------------------------- composer


class LeafNotInLexicon(SpecimenError):
    pass


class NoReading(SpecimenError):
    """Composition produced no reading of type t.

    `reasons` maps a tree position (dotted path, "root" at the top) to a
    human-readable account of why candidates died there.
    """

    def __init__(self, reasons: dict[str, str]):
        self.reasons = dict(reasons)
        lines = [f"  at {pos}: {why}" for pos, why in sorted(self.reasons.items())]
        super().__init__("no reading of type t\n" + "\n".join(lines))


# ------------------------------------------------------------- evaluation


class EvalError(SpecimenError):
    pass


class NotLogicalFragment(EvalError):
    def __init__(self, subterm):
        self.subterm = subterm
        super().__init__(f"term outside the logical fragment: {subterm}")


class UninterpretedSymbol(EvalError):
    pass


class SpecimenOfNonClass(EvalError):
    pass


class MissingScalarValue(EvalError):
    pass


class EmptyDomain(EvalError):
    pass


class ModelError(SpecimenError):
    """Structural problem in a model file or model/signature mismatch."""
