import sys
from typing import Optional

from Token import Token
from TokenType import TokenType

had_err: bool = False


class CoxGameError(Exception):
    """Root of every error raised by the toolkit."""
    def __init__(self, message: str) -> None:
        self.message = message
        super().__init__(self.message)


class LatticeError(CoxGameError):
    """Integer linear algebra precondition failed."""


class PresentationError(CoxGameError):
    """A Cox presentation is malformed or an operation does not apply to it."""


class PolynomialError(CoxGameError):
    """Ring mismatch, unknown variable or an empty generic-form basis."""


class ParseErr(PolynomialError):
    """Exception for polynomial expression parse errors."""
    def __init__(self, token: Token, message: str) -> None:
        self.token = token
        super().__init__(message)
        error(column=self.token.column, token=self.token, msg=self.message)

    def __str__(self) -> str:
        return f"column {self.token.column}: {self.message}"


class OracleError(CoxGameError):
    """Groebner oracle failure."""


class PositiveDimensional(OracleError):
    """A point count was asked of a locus that is not finite."""


class GenericityError(OracleError):
    """Counts disagreed across seed replicas or primes."""


class SingularityError(CoxGameError):
    """Coordinate point is off the variety or its chart is not cyclic."""


class GameError(CoxGameError):
    """A 2-ray game step could not be carried out."""
    def __init__(self, message: str, trace: Optional[object] = None) -> None:
        self.trace = trace
        super().__init__(message)


class ScenarioError(CoxGameError):
    """Scenario file could not be read or validated."""


def error(column: int = 0, token: Optional[Token] = None, msg: str = "default message") -> None:
    """Report an error with column, token, and message."""
    if token is None:
        report(column, "", msg)
    elif token.type == TokenType.EOF:
        report(token.column, " at end", msg)
    else:
        report(token.column, f" at '{token.lexeme}'", msg)


def report(column: int, where: str, message: str) -> None:
    """Print error message and set error flag."""
    print(f"[col {column}] Error{where}: {message}", file=sys.stderr)
    set_err_status(True)


def get_err_status() -> bool:
    """Return the current error status."""
    global had_err
    return had_err


def set_err_status(status: bool) -> None:
    """Set the error status."""
    global had_err
    had_err = status
