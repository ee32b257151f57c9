"""Tiny expression grammar for field-element literals on the command line.

    expr    := term (("+" | "-") term)*
    term    := factor (("*" | "/") factor)*
    factor  := base ("^" integer)?
    base    := rational | "zeta" | variable | call | "(" expr ")" | "-" base
    call    := ("cbrt" | "sqrt") "(" expr ")"
    variable:= "t" digits          (t1 .. tn)
    rational:= digits ("/" digits)?

Radicands of cbrt/sqrt must evaluate inside the base field K; each distinct
radicand extends the working tower by one radical, so a parsed expression
comes back together with the tower it needed.
"""

from __future__ import annotations

import re

from .errors import ParseError
from .field_tower import FieldElement, TowerField

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+)|(?P<name>[a-zA-Z_][a-zA-Z_0-9]*)|(?P<op>[-+*/^()]))"
)


def tokenize(text: str):
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            if text[pos:].strip():
                raise ParseError(f"cannot tokenize {text[pos:]!r}")
            break
        pos = m.end()
        if m.group("num"):
            out.append(("num", int(m.group("num"))))
        elif m.group("name"):
            out.append(("name", m.group("name")))
        else:
            out.append(("op", m.group("op")))
    return out


class _Parser:
    def __init__(self, tokens, tower: TowerField):
        self.tokens = tokens
        self.pos = 0
        self.tower = tower

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self, kind=None, value=None):
        tok = self.peek()
        if tok[0] is None:
            raise ParseError("unexpected end of expression")
        if kind and tok[0] != kind:
            raise ParseError(f"expected {kind}, got {tok[1]!r}")
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, got {tok[1]!r}")
        self.pos += 1
        return tok

    def _lift(self, e: FieldElement) -> FieldElement:
        return e.lift_to(self.tower)

    def parse(self) -> FieldElement:
        v = self.expr()
        if self.peek()[0] is not None:
            raise ParseError(f"trailing input at token {self.peek()[1]!r}")
        return v

    def expr(self) -> FieldElement:
        v = self.term()
        while self.peek() == ("op", "+") or self.peek() == ("op", "-"):
            op = self.take()[1]
            w = self._lift(self.term())
            v = self._lift(v)
            v = v + w if op == "+" else v - w
        return v

    def term(self) -> FieldElement:
        v = self.factor()
        while self.peek() == ("op", "*") or self.peek() == ("op", "/"):
            op = self.take()[1]
            w = self._lift(self.factor())
            v = self._lift(v)
            if op == "*":
                v = v * w
            else:
                if w.is_zero():
                    raise ParseError("division by zero")
                v = v / w
        return v

    def factor(self) -> FieldElement:
        v = self.base()
        if self.peek() == ("op", "^"):
            self.take()
            sign = 1
            if self.peek() == ("op", "-"):
                self.take()
                sign = -1
            k = self.take("num")[1] * sign
            v = self._lift(v) ** k
        return v

    def base(self) -> FieldElement:
        kind, val = self.peek()
        if kind == "op" and val == "-":
            self.take()
            return -self.base()
        if kind == "op" and val == "(":
            self.take()
            v = self.expr()
            self.take("op", ")")
            return v
        if kind == "num":
            self.take()
            return self.tower.scalar(val)
        if kind == "name":
            self.take()
            if val == "zeta":
                return self.tower.zeta()
            if val in ("cbrt", "sqrt"):
                self.take("op", "(")
                inner = self.expr()
                self.take("op", ")")
                return self._radical(val, inner)
            m = re.fullmatch(r"t(\d+)", val)
            if m:
                i = int(m.group(1))
                if not 1 <= i <= self.tower.nvars:
                    raise ParseError(
                        f"variable {val} out of range (1..{self.tower.nvars})"
                    )
                base = TowerField.rational(self.tower.nvars)
                return base.t_var(i - 1).lift_to(self.tower)
            raise ParseError(f"unknown name {val!r}")
        raise ParseError(f"unexpected token {val!r}")

    def _radical(self, kind: str, inner: FieldElement) -> FieldElement:
        inner = self._lift(inner)
        if not inner.in_base():
            raise ParseError("nested radicals are outside the literal grammar")
        degree = 3 if kind == "cbrt" else 2
        rf = inner.base_rf()
        for rad in self.tower.radicals:
            if rad.degree == degree and rad.radicand == rf:
                return self.tower.gen(rad.name)
        name = f"{'c' if degree == 3 else 's'}{len(self.tower.radicals) + 1}"
        names = {r.name for r in self.tower.radicals}
        k = 1
        while name in names:
            name = f"{'c' if degree == 3 else 's'}{len(self.tower.radicals) + 1 + k}"
            k += 1
        self.tower = self.tower.extend(name, degree, self.tower.from_rf(rf))
        return self.tower.gen(name)


def parse_element(text: str, tower: TowerField):
    """Parse a literal; returns (element, tower), where the tower may have
    been extended by radicals appearing in the expression."""
    parser = _Parser(tokenize(text), tower)
    value = parser.parse()
    value = value.lift_to(parser.tower)
    return value, parser.tower
