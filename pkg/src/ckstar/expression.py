"""Parser for algebra expressions such as ``s1 s2* + (1/2)I``.

Grammar::

    expr    := ['+'|'-'] term (('+'|'-') term)*
    term    := postfix (['.'] postfix)*
    postfix := atom '*'*
    atom    := INT ['/' INT] | 'i' | 'I' | 's'INT | '(' expr ')'

``*`` is always the adjoint; products are written by juxtaposition or ``.``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import NamedTuple

from .matrix_monoid import ZeroOneMatrix
from .star_algebra import AlgebraElement, GaussianRational, Monomial, generator


class ExpressionError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


class Token(NamedTuple):
    kind: str
    text: str
    pos: int


_TOKEN = re.compile(r"\s*(?:(?P<gen>s\d+)|(?P<int>\d+)|(?P<sym>[iI])|(?P<op>[*./+\-()]))")


def tokenize(src: str) -> list[Token]:
    out = []
    pos = 0
    while pos < len(src):
        if src[pos:].strip() == "":
            break
        m = _TOKEN.match(src, pos)
        if not m:
            start = len(src) - len(src[pos:].lstrip())
            raise ExpressionError(f"unexpected character {src[start]!r}", start)
        kind = m.lastgroup
        out.append(Token(kind, m.group(kind), m.start(kind)))
        pos = m.end()
    out.append(Token("end", "", len(src)))
    return out


class _Parser:
    def __init__(self, src: str, context: ZeroOneMatrix):
        self.toks = tokenize(src)
        self.i = 0
        self.ctx = context

    @property
    def tok(self) -> Token:
        return self.toks[self.i]

    def take(self) -> Token:
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, text: str):
        t = self.take()
        if t.text != text:
            raise ExpressionError(f"expected {text!r}, found {t.text or 'end of input'!r}", t.pos)

    def starts_atom(self) -> bool:
        t = self.tok
        return t.kind in ("gen", "int", "sym") or t.text == "("

    def expr(self) -> AlgebraElement:
        sign = 1
        if self.tok.text in "+-" and self.tok.kind == "op":
            sign = -1 if self.take().text == "-" else 1
        acc = self.term().scale(sign)
        while self.tok.kind == "op" and self.tok.text in ("+", "-"):
            op = self.take().text
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> AlgebraElement:
        acc = self.postfix()
        while True:
            if self.tok.text == "." and self.tok.kind == "op":
                self.take()
                acc = acc * self.postfix()
            elif self.starts_atom():
                acc = acc * self.postfix()
            else:
                return acc

    def postfix(self) -> AlgebraElement:
        x = self.atom()
        while self.tok.text == "*" and self.tok.kind == "op":
            self.take()
            x = x.adjoint()
        return x

    def atom(self) -> AlgebraElement:
        t = self.take()
        if t.kind == "int":
            value = Fraction(int(t.text))
            if self.tok.text == "/" and self.tok.kind == "op":
                self.take()
                d = self.take()
                if d.kind != "int":
                    raise ExpressionError("expected an integer denominator", d.pos)
                if int(d.text) == 0:
                    raise ExpressionError("division by zero", d.pos)
                value /= int(d.text)
            return AlgebraElement.unit(self.ctx, value)
        if t.kind == "sym":
            if t.text == "i":
                return AlgebraElement.unit(self.ctx, GaussianRational(0, 1))
            return AlgebraElement.unit(self.ctx)
        if t.kind == "gen":
            idx = int(t.text[1:])
            if not 1 <= idx <= self.ctx.n:
                raise ExpressionError(
                    f"generator {t.text} index out of range for a {self.ctx.n}x{self.ctx.n} context", t.pos
                )
            return generator(self.ctx, idx)
        if t.text == "(":
            x = self.expr()
            self.expect(")")
            return x
        raise ExpressionError(f"unexpected {t.text or 'end of input'!r}", t.pos)


def parse_expression(src: str, context: ZeroOneMatrix) -> AlgebraElement:
    p = _Parser(src, context)
    if p.tok.kind == "end":
        raise ExpressionError("empty expression", 0)
    x = p.expr()
    if p.tok.kind != "end":
        raise ExpressionError(f"unexpected {p.tok.text!r}", p.tok.pos)
    return x


def element_to_json(x: AlgebraElement) -> dict:
    return {
        "context": x.context.to_json(),
        "text": str(x),
        "terms": [
            {
                "real": str(c.real),
                "imag": str(c.imag),
                "target": list(m.target),
                "source": list(m.source),
            }
            for m, c in x.terms.items()
        ],
    }


def element_from_json(data: dict) -> AlgebraElement:
    ctx = ZeroOneMatrix(data["context"]["rows"])
    terms = {
        Monomial(tuple(t["target"]), tuple(t["source"])): GaussianRational(Fraction(t["real"]), Fraction(t["imag"]))
        for t in data["terms"]
    }
    return AlgebraElement(ctx, terms)
