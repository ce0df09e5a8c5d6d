from typing import Any

from Environment import Environment
from TokenType import TokenType
from errors import ParseErr
from expressions import Expr, Binary, Unary, Literal, Grouping, Variable, Power
from visitor import Visitor


class Evaluator(Visitor):
    """Folds an expression tree into an element of a polynomial ring."""

    def __init__(self, ring, environment: Environment):
        self.ring = ring
        self.environment = environment

    def evaluate(self, expr: Expr) -> Any:
        return expr.accept(self)

    def visit_literal_expr(self, expr: Literal) -> Any:
        return self.ring(expr.value)

    def visit_grouping_expr(self, expr: Grouping) -> Any:
        return self.evaluate(expr.expression)

    def visit_unary_expr(self, expr: Unary) -> Any:
        right = self.evaluate(expr.right)
        if expr.operator.type == TokenType.MINUS:
            return -right
        return right

    def visit_variable_expr(self, expr: Variable) -> Any:
        value = self.environment.get(expr.name)
        if value.ring != self.ring:
            raise ParseErr(expr.name, f"'{expr.name.lexeme}' lives in another ring.")
        return value

    def visit_power_expr(self, expr: Power) -> Any:
        base = self.evaluate(expr.base)
        return base ** expr.exponent

    def visit_binary_expr(self, expr: Binary) -> Any:
        left = self.evaluate(expr.left)
        right = self.evaluate(expr.right)
        if expr.operator.type == TokenType.MINUS:
            return left - right
        if expr.operator.type == TokenType.PLUS:
            return left + right
        if expr.operator.type == TokenType.STAR:
            return left * right
        raise ParseErr(expr.operator, "Unknown operator.")
