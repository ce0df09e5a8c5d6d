import pytest

import errors
import poly
from Parser import Parser
from Scanner import Scanner
from TokenType import TokenType
from debug import debug_expression
from errors import ParseErr


@pytest.fixture(autouse=True)
def reset_error_flag():
    errors.set_err_status(False)
    yield
    errors.set_err_status(False)


def ast(text):
    return debug_expression(Parser(Scanner(text).scan_tokens()).parse())


def test_scanner_tokens():
    tokens = Scanner("y1 + 3*x'^2").scan_tokens()
    assert [t.type for t in tokens] == [
        TokenType.IDENTIFIER,
        TokenType.PLUS,
        TokenType.INTEGER,
        TokenType.STAR,
        TokenType.IDENTIFIER,
        TokenType.CARET,
        TokenType.INTEGER,
        TokenType.EOF,
    ]
    assert tokens[4].lexeme == "x'"
    assert tokens[2].literal == 3
    assert tokens[4].column == 7


def test_scanner_rejects_unknown_character(capsys):
    with pytest.raises(ParseErr) as info:
        Scanner("x + $").scan_tokens()
    assert info.value.token.column == 4
    assert capsys.readouterr().err == "[col 4] Error at '$': Unexpected character.\n"
    assert errors.get_err_status()


def test_precedence():
    assert ast("a + b*c") == "(a + (b * c))"
    assert ast("-x^2") == "(-(x ^ 2))"
    assert ast("(a - b)*c") == "(((a - b)) * c)"
    assert ast("a - b - c") == "((a - b) - c)"


@pytest.mark.parametrize("text", ["", "x +", "(x", "x^y", "2 x"])
def test_parse_errors(text):
    with pytest.raises(ParseErr):
        Parser(Scanner(text).scan_tokens()).parse()


def test_parse_errors_are_collected():
    parser = Parser(Scanner("x * )").scan_tokens())
    with pytest.raises(ParseErr):
        parser.parse()
    assert parser.errors == ["[col 4] Expect expression."]


def test_evaluate_into_ring():
    ring = poly.make_ring(["x", "y"], poly.Field.prime(101))
    x, y = ring.gens
    assert poly.parse("(x + y)^2 - x^2 - 2*x*y", ring) == y ** 2
    assert poly.parse("-3*x + 104*x", ring) == ring.zero
    assert poly.parse("x*(y - 1)", ring) == x * y - x


def test_bindings_shadow_and_unknown_names():
    ring = poly.make_ring(["x", "y"], poly.Field.prime(101))
    x, y = ring.gens
    assert poly.parse("A + y", ring, {"A": x * y}) == x * y + y
    assert poly.parse("x", ring, {"x": y}) == y
    with pytest.raises(ParseErr):
        poly.parse("x + z", ring)
