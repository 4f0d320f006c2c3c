"""Exception hierarchy with stable error codes.

Every error that can cross the service/CLI boundary carries a ``code``
string; the CLI maps any ParamkitError to exit status 2 and the code is
part of the JSON output contract.
"""


class ParamkitError(Exception):
    code = "ParamkitError"

    def __init__(self, message, **details):
        super().__init__(message)
        self.message = message
        self.details = details

    def to_dict(self):
        d = {"code": self.code, "message": self.message}
        if self.details:
            d["details"] = {k: v for k, v in self.details.items() if v is not None}
        return d


# -- parsing ---------------------------------------------------------------

class ParseError(ParamkitError):
    """Session/scenario file could not be parsed."""
    code = "ParseError"


class PolySyntaxError(ParseError):
    """Polynomial expression violates the grammar; carries line/column."""
    code = "SyntaxError"

    def __init__(self, message, line=None, column=None):
        super().__init__(message, line=line, column=column)
        self.line = line
        self.column = column


class UnknownVariable(ParseError):
    code = "UnknownVariable"

    def __init__(self, name, line=None, column=None):
        super().__init__(f"unknown variable {name!r}", line=line, column=column)
        self.name = name
        self.line = line
        self.column = column


class CoefficientOverflow(ParseError):
    code = "CoefficientOverflow"


# -- ring / polynomial arithmetic -----------------------------------------

class RingMismatch(ParamkitError):
    code = "RingMismatch"


class LengthMismatch(ParamkitError):
    code = "LengthMismatch"


class ExponentOverflow(ParamkitError):
    code = "ExponentOverflow"


class BudgetExceeded(ParamkitError):
    code = "BudgetExceeded"


# -- ideal operations ------------------------------------------------------

class ZeroDivisorQuery(ParamkitError):
    code = "ZeroDivisorQuery"


class EmptyVariety(ParamkitError):
    code = "EmptyVariety"


class NotFiniteLength(ParamkitError):
    code = "NotFiniteLength"


# -- limit closures --------------------------------------------------------

class Unstabilized(ParamkitError):
    code = "Unstabilized"


# -- Koszul ----------------------------------------------------------------

class TooLong(ParamkitError):
    code = "TooLong"


class BadLevel(ParamkitError):
    code = "BadLevel"


class NotALift(ParamkitError):
    code = "NotALift"


# -- criteria --------------------------------------------------------------

class NotSOP(ParamkitError):
    code = "NotSOP"


class NotContained(ParamkitError):
    code = "NotContained"

    def __init__(self, message, index=None):
        super().__init__(message, index=index)
        self.index = index


class WrongDimension(ParamkitError):
    code = "WrongDimension"


class NotParameter(ParamkitError):
    code = "NotParameter"


class NoSOPFound(ParamkitError):
    code = "NoSOPFound"


class WrongCharacteristic(ParamkitError):
    code = "WrongCharacteristic"


class NotPrimePower(ParamkitError):
    code = "NotPrimePower"


class ZeroAnnihilator(ParamkitError):
    code = "ZeroAnnihilator"


# -- corpus / CLI ----------------------------------------------------------

class UnknownScenario(ParamkitError):
    code = "UnknownScenario"


class UnknownCommand(ParamkitError):
    code = "UnknownCommand"


class InvariantViolation(ParamkitError):
    """An identity the library guarantees failed; indicates a bug."""
    code = "InvariantViolation"
