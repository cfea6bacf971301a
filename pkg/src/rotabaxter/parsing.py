"""Text syntax for words and elements.

Words::

    word   := factor (SP factor)*
    factor := letter | '[' word ']' | 'R(' word ')'
    letter := ident ('.' ident)*

Element expressions (used by ``eval``) extend this with sums, rational
coefficients, the product ``*``, ``R(...)`` on arbitrary elements and the
induced operations ``prec``, ``succ``, ``dot``, ``prec_prime``, ``star``::

    expr   := ['-'] term (('+' | '-') term)*
    term   := factor ('*' factor)*
    factor := rational | atom+             (juxtaposed atoms concatenate)
    atom   := letter | '[' expr ']' | 'R(' expr ')' | op '(' expr ',' expr ')' | '(' expr ')'
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .dendriform import KINDS, induced_op
from .free import Context, Element, rb_apply
from .words import Bracket, Letter, Word, WordError, concat


class ParseError(ValueError):
    def __init__(self, message: str, pos: int | None = None, text: str = ""):
        self.pos = pos
        self.text = text
        where = f" at position {pos}" if pos is not None else ""
        super().__init__(f"{message}{where}")


_TOKEN = re.compile(
    r"""\s*(?:
        (?P<num>\d+(?:/\d+)?)
      | (?P<id>[A-Za-z_][A-Za-z0-9_]*)
      | (?P<sym>[\[\]().,+\-*])
    )""",
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str  # "num", "id", a symbol, or "eof"
    text: str
    pos: int
    spaced: bool  # whitespace precedes the token


def tokenize(text: str) -> list[Token]:
    toks = []
    pos = 0
    while True:
        m = re.compile(r"\s*").match(text, pos)
        spaced = m.end() > pos
        pos = m.end()
        if pos >= len(text):
            break
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        value = m.group(kind)
        start = m.start(kind)
        toks.append(Token(value if kind == "sym" else kind, value, start, spaced))
        pos = m.end()
    toks.append(Token("eof", "", len(text), False))
    return toks


class _Parser:
    def __init__(self, text: str, free_monoid: bool, alphabet: Sequence[str] | None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.free_monoid = free_monoid
        self.alphabet = None if alphabet is None else tuple(alphabet)

    # -- token helpers -------------------------------------------------------

    def peek(self, k: int = 0) -> Token:
        return self.toks[min(self.i + k, len(self.toks) - 1)]

    def take(self, kind: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            found = tok.text or "end of input"
            raise ParseError(f"expected {kind!r}, found {found!r}", tok.pos, self.text)
        self.i += 1
        return tok

    def at(self, kind: str) -> bool:
        return self.peek().kind == kind

    def done(self) -> None:
        if not self.at("eof"):
            tok = self.peek()
            raise ParseError(f"unexpected {tok.text!r}", tok.pos, self.text)

    def _is_call(self) -> bool:
        tok = self.peek()
        return tok.kind == "id" and self.peek(1).kind == "(" and not self.peek(1).spaced

    # -- letters and words ---------------------------------------------------

    def letter(self) -> Letter:
        first = self.take("id")
        parts = [first]
        while self.at("."):
            self.i += 1
            parts.append(self.take("id"))
        if len(parts) > 1 and not self.free_monoid:
            raise ParseError("'.'-joined letters need the free-monoid (tensor) base", first.pos, self.text)
        for p in parts:
            if self.alphabet is not None and p.text not in self.alphabet:
                raise ParseError(f"unknown generator {p.text!r}", p.pos, self.text)
        return Letter(tuple(p.text for p in parts))

    def word(self) -> Word:
        factors = []
        while True:
            tok = self.peek()
            if tok.kind == "[":
                self.i += 1
                inner = self.word()
                self.take("]")
                factors.append((Bracket(inner), tok.pos))
            elif tok.kind == "id" and tok.text == "R" and self._is_call():
                self.i += 2
                inner = self.word()
                self.take(")")
                factors.append((Bracket(inner), tok.pos))
            elif tok.kind == "id":
                factors.append((self.letter(), tok.pos))
            else:
                break
        if not factors:
            tok = self.peek()
            raise ParseError(f"expected a word, found {tok.text or 'end of input'!r}", tok.pos, self.text)
        for (a, _), (b, pos) in zip(factors, factors[1:]):
            if a.is_letter == b.is_letter:
                what = "letters" if a.is_letter else "brackets"
                raise ParseError(f"alternation violation: two adjacent {what}", pos, self.text)
        return Word(tuple(f for f, _ in factors))


class _ExprParser(_Parser):
    def __init__(self, text: str, ctx: Context):
        super().__init__(text, ctx.base.kind == "free_monoid", ctx.alphabet)
        self.ctx = ctx

    def expr(self):
        neg = False
        if self.at("-") or self.at("+"):
            neg = self.take(self.peek().kind).kind == "-"
        value = self.term()
        if neg:
            value = -value
        while self.at("+") or self.at("-"):
            op = self.take(self.peek().kind)
            rhs = self.term()
            value = self._combine(value, rhs if op.kind == "+" else -rhs, op)
        return value

    def _combine(self, a, b, tok):
        if isinstance(a, Fraction) and isinstance(b, Fraction) and a == 0 == b:
            return a
        if isinstance(a, Fraction):
            if a != 0:
                raise ParseError("a bare scalar is not an element (the algebra has no unit)", tok.pos, self.text)
            return b
        if isinstance(b, Fraction):
            if b != 0:
                raise ParseError("a bare scalar is not an element (the algebra has no unit)", tok.pos, self.text)
            return a
        return a + b

    def term(self):
        value = self.factor()
        while self.at("*"):
            self.i += 1
            rhs = self.factor()
            if isinstance(value, Fraction) or isinstance(rhs, Fraction):
                value = value * rhs
            else:
                value = self.ctx.mul(value, rhs)
        return value

    def factor(self):
        if self.at("num"):
            tok = self.take("num")
            return Fraction(tok.text)
        value = self.atom()
        while self.peek().kind in ("id", "[", "("):
            tok = self.peek()
            nxt = self.atom()
            value = self._juxtapose(value, nxt, tok)
        return value

    def _juxtapose(self, a: Element, b: Element, tok: Token) -> Element:
        acc: dict = {}
        for u, cu in a.terms():
            for v, cv in b.terms():
                try:
                    w = concat(u, v)
                except WordError:
                    raise ParseError(f"alternation violation joining {u} and {v}", tok.pos, self.text) from None
                acc[w] = acc.get(w, 0) + cu * cv
        return Element(self.ctx, acc)

    def atom(self) -> Element:
        tok = self.peek()
        if tok.kind == "[":
            self.i += 1
            inner = self._element(self.expr(), tok)
            self.take("]")
            return rb_apply(inner)
        if tok.kind == "(":
            self.i += 1
            inner = self._element(self.expr(), tok)
            self.take(")")
            return inner
        if tok.kind == "id" and self._is_call():
            name = tok.text
            self.i += 2
            if name == "R":
                inner = self._element(self.expr(), tok)
                self.take(")")
                return rb_apply(inner)
            if name in KINDS:
                a = self._element(self.expr(), tok)
                self.take(",")
                b = self._element(self.expr(), tok)
                self.take(")")
                return induced_op(self.ctx, name, a, b)
            raise ParseError(f"unknown operator {name!r}", tok.pos, self.text)
        if tok.kind == "id":
            return self.ctx.word(Word((self.letter(),)))
        raise ParseError(f"expected an element, found {tok.text or 'end of input'!r}", tok.pos, self.text)

    def _element(self, v, tok: Token) -> Element:
        if isinstance(v, Fraction):
            if v == 0:
                return self.ctx.zero()
            raise ParseError("a bare scalar is not an element (the algebra has no unit)", tok.pos, self.text)
        return v


def parse_word(text: str, base_kind: str = "zero", alphabet: Sequence[str] | None = None) -> Word:
    """Parse one word.  ``base_kind`` is ``"zero"``, ``"tensor"`` /
    ``"free_monoid"`` or ``"table"``; only the free monoid accepts
    ``x.y`` letters."""
    p = _Parser(text, base_kind in ("tensor", "free_monoid"), alphabet)
    w = p.word()
    p.done()
    return w


def render_word(w: Word) -> str:
    return str(w)


def parse_element(text: str, ctx: Context) -> Element:
    """Parse and evaluate an element expression over ``ctx``."""
    p = _ExprParser(text, ctx)
    value = p.expr()
    p.done()
    if isinstance(value, Fraction):
        if value == 0:
            return ctx.zero()
        raise ParseError("a bare scalar is not an element (the algebra has no unit)", 0, text)
    return value
