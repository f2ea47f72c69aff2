"""Tiny recursive-descent evaluator for element and polynomial text.

Grammar::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := ('-' | '+') unary | power
    power  := atom (('^' | '**') INT)?
    atom   := INT | VAR | 'sqrt' '(' ['-'] INT ')' | '(' expr ')'

The caller supplies the value constructors, so the same grammar reads
"1/2-3*sqrt(2)" as a field element and "T^4+1" as a polynomial.
"""

from __future__ import annotations

import re
from typing import Any, Callable

_TOKEN = re.compile(r"\s*(?:(\d+)|(\*\*|[-+*/^()])|([A-Za-z_]+))")


class ParseError(ValueError):
    pass


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r} in {text!r}")
        if m.group(1) is not None:
            tokens.append(("int", m.group(1)))
        elif m.group(2) is not None:
            tokens.append(("op", "^" if m.group(2) == "**" else m.group(2)))
        else:
            tokens.append(("name", m.group(3)))
        pos = m.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return tokens


def evaluate(
    text: str,
    integer: Callable[[int], Any],
    sqrt: Callable[[int], Any] | None = None,
    variable: Callable[[str], Any] | None = None,
) -> Any:
    """Evaluate ``text`` using the supplied constructors.

    ``integer`` builds a constant from a Python int, ``sqrt`` builds the
    square root of an integer and ``variable`` resolves any other name.
    Values must support ``+ - * /`` and integer powers.
    """
    tokens = _tokenize(text)
    if not tokens:
        raise ParseError("empty expression")
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None)

    def take(kind=None, value=None):
        nonlocal pos
        tok = peek()
        if tok[0] is None or (kind and tok[0] != kind) or (value and tok[1] != value):
            raise ParseError(f"unexpected token {tok[1]!r} in {text!r}")
        pos += 1
        return tok

    def expr():
        val = term()
        while peek() in (("op", "+"), ("op", "-")):
            op = take()[1]
            rhs = term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term():
        val = unary()
        while peek() in (("op", "*"), ("op", "/")):
            op = take()[1]
            rhs = unary()
            val = val * rhs if op == "*" else val / rhs
        return val

    def unary():
        if peek() == ("op", "-"):
            take()
            return -unary()
        if peek() == ("op", "+"):
            take()
            return unary()
        return power()

    def power():
        base = atom()
        if peek() == ("op", "^"):
            take()
            return base ** int(take("int")[1])
        return base

    def atom():
        kind, value = peek()
        if kind == "int":
            take()
            return integer(int(value))
        if kind == "op" and value == "(":
            take()
            val = expr()
            take("op", ")")
            return val
        if kind == "name":
            take()
            if value == "sqrt":
                if sqrt is None:
                    raise ParseError(f"sqrt not allowed in {text!r}")
                take("op", "(")
                sign = 1
                if peek() == ("op", "-"):
                    take()
                    sign = -1
                radicand = sign * int(take("int")[1])
                take("op", ")")
                return sqrt(radicand)
            if variable is None:
                raise ParseError(f"unknown name {value!r} in {text!r}")
            return variable(value)
        raise ParseError(f"unexpected token {value!r} in {text!r}")

    result = expr()
    if pos != len(tokens):
        raise ParseError(f"trailing input {tokens[pos][1]!r} in {text!r}")
    return result
