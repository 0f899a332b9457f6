"""Parser and canonical text forms for coefficients, polynomials and matrices.

Grammar (whitespace ignored)::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '.' | '/') unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' ['-'] INT)?
    atom   := NUMBER | 'i' | NAME | '(' expr ')' | '[' row (',' row)* ']'
    row    := '[' expr (',' expr)* ']'

``NAME`` is a parameter (see :data:`qmink.coeff.PARAMETERS`) or, when a
generator set is supplied, a generator.  ``*`` and ``.`` are both the
(noncommutative) product; ``.`` is the conventional word separator.
Division is only by coefficients.
"""

from __future__ import annotations

from fractions import Fraction
import re

from .coeff import Coefficient, I, PARAMETERS, const, param, UndeclaredParameter

__all__ = [
    "ParseError",
    "parse_expression",
    "parse_coefficient",
    "parse_poly",
    "parse_matrix",
    "format_ncpoly",
    "format_matrix",
]

_GREEK = {"α": "alpha", "β": "beta", "γ": "gamma", "δ": "delta"}

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z0-9_]*'?)|(?P<op>[-+*/.^(),\[\]]))"
)


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.pos = pos


def _tokenize(text: str):
    for g, n in _GREEK.items():
        text = text.replace(g, n)
    pos = 0
    tokens = []
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError("unexpected character", text, pos)
        start = m.start(m.lastgroup)
        tokens.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens, text


class _Parser:
    def __init__(self, text, gens, ctx):
        self.tokens, self.text = _tokenize(text)
        self.i = 0
        self.gens = gens
        self.ctx = ctx

    def peek(self):
        return self.tokens[self.i]

    def take(self, value=None):
        tok = self.tokens[self.i]
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}", self.text, tok[2])
        self.i += 1
        return tok

    def parse(self):
        v = self.expr()
        tok = self.peek()
        if tok[0] != "end":
            raise ParseError(f"unexpected {tok[1]!r}", self.text, tok[2])
        return v

    def expr(self):
        v = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            op = self.take()[1]
            w = self.term()
            v = v + w if op == "+" else v - w
        return v

    def term(self):
        v = self.unary()
        while self.peek()[0] == "op" and self.peek()[1] in ("*", ".", "/"):
            op, pos = self.take()[1:]
            w = self.unary()
            if op == "/":
                if not isinstance(w, Coefficient):
                    raise ParseError("division by a non-scalar", self.text, pos)
                if not w:
                    raise ParseError("division by zero", self.text, pos)
                v = v / w
            else:
                v = _mul(v, w)
        return v

    def unary(self):
        tok = self.peek()
        if tok[0] == "op" and tok[1] in ("+", "-"):
            self.take()
            v = self.unary()
            return -v if tok[1] == "-" else v
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^" and self.peek()[0] == "op":
            pos = self.take()[2]
            neg = False
            if self.peek()[1] == "-":
                self.take()
                neg = True
            tok = self.take()
            if tok[0] != "num" or "/" in tok[1]:
                raise ParseError("exponent must be an integer", self.text, tok[2])
            n = -int(tok[1]) if neg else int(tok[1])
            if n < 0 and not isinstance(base, Coefficient):
                raise ParseError("negative power of a non-scalar", self.text, pos)
            return base ** n
        return base

    def atom(self):
        kind, value, pos = self.take()
        if kind == "num":
            return const(Fraction(value))
        if kind == "name":
            if value == "i":
                return I
            if self.gens is not None and value in self.gens.names:
                return self.gens.gen(value)
            if value in PARAMETERS:
                c = param(value)
                if self.ctx is not None:
                    try:
                        self.ctx.check(c)
                    except UndeclaredParameter:
                        raise ParseError(f"undeclared parameter {value!r}", self.text, pos) from None
                return c
            raise ParseError(f"unknown name {value!r}", self.text, pos)
        if value == "(":
            v = self.expr()
            self.take(")")
            return v
        if value == "[":
            from .matalg import Matrix

            rows = [self.row()]
            while self.peek()[1] == ",":
                self.take()
                rows.append(self.row())
            self.take("]")
            n = len(rows)
            if any(len(r) != n for r in rows):
                raise ParseError("matrix literal must be square", self.text, pos)
            return Matrix(rows)
        raise ParseError(f"unexpected {value!r}", self.text, pos)

    def row(self):
        self.take("[")
        vals = [self.expr()]
        while self.peek()[1] == ",":
            self.take()
            vals.append(self.expr())
        self.take("]")
        return vals


def _mul(a, b):
    if isinstance(a, Coefficient) and not isinstance(b, Coefficient):
        return b.__rmul__(a)
    return a * b


def parse_expression(text: str, gens=None, ctx=None):
    """Parse to a Coefficient, an NCPoly (if generators occur) or a Matrix."""
    return _Parser(text, gens, ctx).parse()


def parse_coefficient(text: str, ctx=None) -> Coefficient:
    v = parse_expression(text, None, ctx)
    if not isinstance(v, Coefficient):
        raise ParseError("expected a scalar expression", text, 0)
    return v


def parse_poly(text: str, gens, ctx=None):
    from .ncalg import NCPoly

    v = parse_expression(text, gens, ctx)
    if isinstance(v, Coefficient):
        return NCPoly({(): v}, gens)
    if not isinstance(v, NCPoly):
        raise ParseError("expected a polynomial", text, 0)
    return v


def parse_matrix(text: str, gens=None, ctx=None):
    from .matalg import Matrix

    v = parse_expression(text, gens, ctx)
    if not isinstance(v, Matrix):
        raise ParseError("expected a matrix literal", text, 0)
    return v


def _needs_parens(s: str) -> bool:
    body = s[1:] if s.startswith("-") else s
    return any(ch in body for ch in " /")


def format_ncpoly(p) -> str:
    out = ""
    for w, c in p.sorted_terms():
        cs = str(c)
        if not w:
            s = f"({cs})" if _needs_parens(cs) else cs
        else:
            word = p.gens.word_str(w)
            if cs == "1":
                s = word
            elif cs == "-1":
                s = "-" + word
            elif _needs_parens(cs):
                s = f"({cs})*{word}"
            else:
                s = f"{cs}*{word}"
        if not out:
            out = s
        elif s.startswith("-"):
            out += " - " + s[1:]
        else:
            out += " + " + s
    return out or "0"


def format_matrix(m) -> str:
    return "[" + ", ".join("[" + ", ".join(str(x) for x in row) + "]" for row in m.rows) + "]"
