"""Debug utility to print the AST of a polynomial expression and its expansion."""

import sys
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

from Scanner import Scanner  # noqa: E402
from Parser import Parser  # noqa: E402
from errors import CoxGameError  # noqa: E402
from expressions import Expr, Binary, Unary, Literal, Grouping, Variable, Power  # noqa: E402
import poly  # noqa: E402


def debug_expression(expr: Expr) -> str:
    if expr is None:
        return "NoneExpression"
    if isinstance(expr, Literal):
        return str(expr.value)
    if isinstance(expr, Variable):
        return expr.name.lexeme
    if isinstance(expr, Binary):
        return f"({debug_expression(expr.left)} {expr.operator.lexeme} {debug_expression(expr.right)})"
    if isinstance(expr, Unary):
        return f"({expr.operator.lexeme}{debug_expression(expr.right)})"
    if isinstance(expr, Grouping):
        return f"({debug_expression(expr.expression)})"
    if isinstance(expr, Power):
        return f"({debug_expression(expr.base)} ^ {expr.exponent})"
    return "expression"


def expand(src: str, names, prime: int = 32003) -> str:
    """The expression as an element of GF(prime)[names]."""
    ring = poly.make_ring(names, poly.Field.prime(prime))
    return poly.format_poly(poly.parse(src, ring))


def main():
    print("Polynomial AST Debugger (first line: variables, then expressions; Ctrl+C to exit)")
    names = input("vars> ").split()
    while True:
        try:
            src = input(">> ")
            if not src.strip():
                continue
            expr = Parser(Scanner(src).scan_tokens()).parse()
            print(debug_expression(expr))
            print(expand(src, names))
        except KeyboardInterrupt:
            print("\nExiting debugger.")
            break
        except CoxGameError as e:
            print(f"Error: {e}")


if __name__ == "__main__":
    main()
