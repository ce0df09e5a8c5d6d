from enum import Enum


class TokenType(Enum):
    """Token types of the polynomial expression language."""
    # Single-character tokens
    LEFT_PAREN = 1
    RIGHT_PAREN = 2
    MINUS = 3
    PLUS = 4
    STAR = 5
    CARET = 6

    # Literals
    IDENTIFIER = 7
    INTEGER = 8

    EOF = 9
    UNKNOWN = 10
