"""Lexer and recursive-descent parser for the expression language.

    expr    := oxterm (('+' | '-') oxterm)*
    oxterm  := product ('ox' product)*
    product := unary ('*' unary)*
    unary   := '-'* power
    power   := atom ('^' INT)?
    atom    := NUM | 'rt2' | NAME | NAME '(' args ')' | '(' expr ')'

``ox`` binds looser than ``*`` and tighter than ``+``.  An operand of
``ox`` may not contain a ``tensor(...)`` call: the two spellings of the
tensor product do not mix.  Positions are byte offsets into the UTF-8
input.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from ..errors import SpinorQCError


class ParseError(SpinorQCError, ValueError):
    def __init__(self, message: str, offset: int, expected: frozenset[str] = frozenset()):
        self.message = message
        self.offset = offset
        self.expected = frozenset(expected)
        text = f"parse error at byte {offset}: {message}"
        if self.expected:
            text += "; expected one of: " + ", ".join(sorted(self.expected))
        super().__init__(text)


# -- tokens ------------------------------------------------------------------------


@dataclass(frozen=True)
class Token:
    kind: str  # num rt2 name ox op eof
    text: str
    pos: int  # byte offset


_TOKEN_RE = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<rt2>√2)
  | (?P<name>(?:Phi|Psi)[+-]|[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^(),=])
    """,
    re.VERBOSE,
)

MAX_LITERAL = 1000
ATOM_START = frozenset({"number", "rt2", "name", "'('", "'-'"})


def tokenize(source: str | bytes) -> list[Token]:
    if isinstance(source, (bytes, bytearray)):
        try:
            text = bytes(source).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("input is not valid UTF-8", exc.start) from None
    else:
        text = source
    out = []
    i = byte = 0
    while i < len(text):
        m = _TOKEN_RE.match(text, i)
        if m is None:
            raise ParseError(f"unexpected character {text[i]!r}", byte, ATOM_START)
        kind = m.lastgroup
        lexeme = m.group()
        if kind == "num" and len(lexeme) > MAX_LITERAL:
            raise ParseError("numeric literal too long", byte)
        if kind != "ws":
            if kind == "name" and lexeme == "rt2":
                kind = "rt2"
            elif kind == "name" and lexeme == "ox":
                kind = "ox"
            out.append(Token(kind, lexeme, byte))
        byte += len(lexeme.encode("utf-8"))
        i = m.end()
    out.append(Token("eof", "", byte))
    return out


# -- syntax tree ----------------------------------------------------------------


@dataclass(frozen=True)
class Node:
    pos: int


@dataclass(frozen=True)
class Num(Node):
    value: Fraction


@dataclass(frozen=True)
class Rt2(Node):
    pass


@dataclass(frozen=True)
class Name(Node):
    name: str


@dataclass(frozen=True)
class Neg(Node):
    operand: Node


@dataclass(frozen=True)
class Sum(Node):
    terms: tuple[tuple[int, Node], ...]  # (sign, term)


@dataclass(frozen=True)
class Product(Node):
    factors: tuple[Node, ...]


@dataclass(frozen=True)
class Pow(Node):
    base: Node
    exponent: int


@dataclass(frozen=True)
class Call(Node):
    func: str
    args: tuple[Node, ...]


@dataclass(frozen=True)
class Ox(Node):
    parts: tuple[Node, ...]


@dataclass(frozen=True)
class Let(Node):
    name: str
    value: Node


def find_call(node: Node, func: str) -> Call | None:
    if isinstance(node, Call):
        if node.func == func:
            return node
        children = node.args
    elif isinstance(node, Neg):
        children = (node.operand,)
    elif isinstance(node, Sum):
        children = tuple(t for _, t in node.terms)
    elif isinstance(node, Product):
        children = node.factors
    elif isinstance(node, Pow):
        children = (node.base,)
    elif isinstance(node, Ox):
        children = node.parts
    else:
        children = ()
    for c in children:
        hit = find_call(c, func)
        if hit is not None:
            return hit
    return None


# -- parser -----------------------------------------------------------------------


def _describe(tok: Token) -> str:
    return "end of input" if tok.kind == "eof" else repr(tok.text)


MAX_DEPTH = 64


class Parser:
    def __init__(self, source: str | bytes):
        self.tokens = tokenize(source)
        self.i = 0
        self.depth = 0

    @property
    def tok(self) -> Token:
        return self.tokens[self.i]

    def advance(self) -> Token:
        t = self.tokens[self.i]
        if t.kind != "eof":
            self.i += 1
        return t

    def at_op(self, *ops: str) -> bool:
        return self.tok.kind == "op" and self.tok.text in ops

    def expect_op(self, op: str) -> Token:
        if not self.at_op(op):
            raise ParseError(f"unexpected {_describe(self.tok)}", self.tok.pos, {f"'{op}'"})
        return self.advance()

    def fail(self, expected) -> None:
        raise ParseError(f"unexpected {_describe(self.tok)}", self.tok.pos, expected)

    # grammar ----------------------------------------------------------------

    def parse(self) -> Node:
        node = self.expr()
        if self.tok.kind != "eof":
            self.fail({"'+'", "'-'", "'*'", "'^'", "'ox'", "end of input"})
        return node

    def statement(self) -> Node:
        """An expression or ``let NAME = expr`` (REPL only)."""
        if self.tok.kind == "name" and self.tok.text == "let":
            start = self.advance().pos
            if self.tok.kind != "name":
                self.fail({"name"})
            name = self.advance().text
            self.expect_op("=")
            value = self.expr()
            if self.tok.kind != "eof":
                self.fail({"'+'", "'-'", "'*'", "'^'", "'ox'", "end of input"})
            return Let(start, name, value)
        return self.parse()

    def expr(self) -> Node:
        self.depth += 1
        if self.depth > MAX_DEPTH:
            raise ParseError("expression nested too deeply", self.tok.pos)
        first = self.oxterm()
        terms = [(1, first)]
        while self.at_op("+", "-"):
            sign = 1 if self.advance().text == "+" else -1
            terms.append((sign, self.oxterm()))
        self.depth -= 1
        return first if len(terms) == 1 else Sum(first.pos, tuple(terms))

    def oxterm(self) -> Node:
        first = self.product()
        parts = [first]
        while self.tok.kind == "ox":
            self.advance()
            parts.append(self.product())
        if len(parts) == 1:
            return first
        for p in parts:
            hit = find_call(p, "tensor")
            if hit is not None:
                raise ParseError("tensor(...) cannot be an operand of 'ox'", hit.pos)
        return Ox(first.pos, tuple(parts))

    def product(self) -> Node:
        first = self.unary()
        factors = [first]
        while self.at_op("*"):
            self.advance()
            factors.append(self.unary())
        return first if len(factors) == 1 else Product(first.pos, tuple(factors))

    def unary(self) -> Node:
        signs = []
        while self.at_op("-"):
            signs.append(self.advance().pos)
        node = self.power()
        if len(signs) % 2:
            node = Neg(signs[0], node)
        return node

    def power(self) -> Node:
        base = self.atom()
        if self.at_op("^"):
            self.advance()
            if self.tok.kind != "num" or "/" in self.tok.text:
                self.fail({"integer"})
            return Pow(base.pos, base, int(self.advance().text))
        return base

    def atom(self) -> Node:
        t = self.tok
        if t.kind == "num":
            self.advance()
            num, _, den = t.text.partition("/")
            if den and int(den) == 0:
                raise ParseError("zero denominator", t.pos)
            return Num(t.pos, Fraction(int(num), int(den) if den else 1))
        if t.kind == "rt2":
            self.advance()
            return Rt2(t.pos)
        if t.kind == "name":
            self.advance()
            if self.at_op("("):
                self.advance()
                args = [self.expr()]
                while self.at_op(","):
                    self.advance()
                    args.append(self.expr())
                if not self.at_op(")"):
                    self.fail({"','", "')'"})
                self.advance()
                return Call(t.pos, t.text, tuple(args))
            return Name(t.pos, t.text)
        if self.at_op("("):
            self.advance()
            node = self.expr()
            self.expect_op(")")
            return node
        self.fail(ATOM_START - {"'-'"})


def parse(source: str | bytes) -> Node:
    return Parser(source).parse()


def parse_statement(source: str | bytes) -> Node:
    return Parser(source).statement()
