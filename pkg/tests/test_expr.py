from fractions import Fraction

import pytest

from envelope.errors import ExpressionError
from envelope.expr import Context, evaluate_text, parse, tokenize

CTX = Context({"a": Fraction(2), "b": Fraction(3)}, {"f": lambda x, y: x * 10 + y})


@pytest.mark.parametrize("text,value", [
    ("1 + 2*3", 7), ("(1 + 2)*3", 9), ("-a^2", -4), ("a - b - 1", -2),
    ("1/2 + 0.25", Fraction(3, 4)), ("f(a, b)", 23), ("+a", 2), ("f(1,2)^2", 144),
])
def test_evaluate(text, value):
    assert evaluate_text(text, CTX) == value


def test_decimal_is_exact():
    assert tokenize("0.1")[0] == ("num", Fraction(1, 10))


@pytest.mark.parametrize("text", ["", "1 +", "(1", "a b", "q", "g(1)", "1/0", "a^b", "a^1.5", "a $ b", "f(1)"])
def test_errors(text):
    with pytest.raises(ExpressionError):
        evaluate_text(text, CTX)


def test_parse_structure():
    node = parse("x*y + 2")
    assert node.kind == "add" and node.args[0].kind == "mul"
