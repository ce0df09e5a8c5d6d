from TokenType import TokenType


class Token:
    """A lexeme of a polynomial expression with its type, literal value and column."""
    def __init__(self, token_type: TokenType, lexeme: str, literal: object, column: int) -> None:
        self.type: TokenType = token_type
        self.lexeme: str = lexeme
        self.literal: object = literal
        self.column: int = column

    def __str__(self) -> str:
        return f"{self.type} {self.lexeme} {self.literal}"
