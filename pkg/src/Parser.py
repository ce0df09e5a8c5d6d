from typing import List

from Token import Token
from TokenType import TokenType
from errors import ParseErr
from expressions import Expr, Binary, Unary, Literal, Grouping, Variable, Power


class Parser:
    """Parses a list of tokens into a polynomial expression tree.

    expr    := term (("+" | "-") term)*
    term    := unary ("*" unary)*
    unary   := "-" unary | power
    power   := primary ("^" INTEGER)?
    primary := INTEGER | IDENT | "(" expr ")"
    """

    def __init__(self, tokens: List[Token]):

        self.tokens = tokens
        self.current = 0
        self.errors: List[str] = []

    def parse(self) -> Expr:
        """Parse the whole token list as one expression."""
        expr = self.expression()
        if not self.is_at_end():
            self.fail(self.peek(), "Expect end of expression.")
        return expr

    def expression(self) -> Expr:
        """Parse a sum or difference."""
        expr = self.term()
        while self.match(TokenType.MINUS, TokenType.PLUS):
            operator = self.previous()
            right = self.term()
            expr = Binary(expr, operator, right)
        return expr

    def term(self) -> Expr:
        """Parse a product."""
        expr = self.unary()
        while self.match(TokenType.STAR):
            operator = self.previous()
            right = self.unary()
            expr = Binary(expr, operator, right)
        return expr

    def unary(self) -> Expr:
        if self.match(TokenType.MINUS):
            operator = self.previous()
            right = self.unary()
            return Unary(operator, right)
        return self.power()

    def power(self) -> Expr:
        expr = self.primary()
        if self.match(TokenType.CARET):
            caret = self.previous()
            exponent = self.consume(TokenType.INTEGER, "Expect integer exponent after '^'.")
            return Power(expr, caret, exponent.literal)
        return expr

    def primary(self) -> Expr:
        if self.match(TokenType.INTEGER):
            return Literal(self.previous().literal)
        if self.match(TokenType.IDENTIFIER):
            return Variable(self.previous())
        if self.match(TokenType.LEFT_PAREN):
            expr = self.expression()
            self.consume(TokenType.RIGHT_PAREN, "Expect ')' after expression.")
            return Grouping(expr)
        self.fail(self.peek(), "Expect expression.")

    def consume(self, type: TokenType, message: str) -> Token:
        if self.check(type):
            return self.advance()
        self.fail(self.peek(), message)

    def fail(self, token: Token, message: str) -> None:
        self.errors.append(f"[col {token.column}] {message}")
        raise ParseErr(token, message)

    def match(self, *types: TokenType) -> bool:
        for type in types:
            if self.check(type):
                self.advance()
                return True
        return False

    def check(self, type: TokenType) -> bool:
        if self.is_at_end():
            return False
        return self.peek().type == type

    def advance(self) -> Token:
        if not self.is_at_end():
            self.current += 1
        return self.previous()

    def is_at_end(self) -> bool:
        return self.peek().type == TokenType.EOF

    def peek(self) -> Token:
        return self.tokens[self.current]

    def previous(self) -> Token:
        return self.tokens[self.current - 1]
