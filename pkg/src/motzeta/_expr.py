"""Tiny recursive-descent parser for the integer expression grammar.

The same grammar serves Laurent polynomials in ``L``, Grothendieck-ring
elements (which add stratum symbols such as ``E~{1,3}[m=2]``) and the
integer polynomials fed to the jet enumerator.  The parser only builds an
AST; each caller evaluates it in its own ring.

AST nodes are tuples::

    ("int", n)  ("var", name)  ("sym", name, equivariant, ids, label)
    ("add", a, b)  ("sub", a, b)  ("mul", a, b)  ("neg", a)  ("pow", a, k)
"""

from __future__ import annotations

import re

from .errors import ParseError

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<int>\d+)
  | (?P<sym>[A-Za-z_][A-Za-z0-9_]*\s*~?\s*\{[^}]*\}(?:\s*\[\s*m\s*=\s*\d+\s*\])?)
  | (?P<ident>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<op>[-+*^()])
    """,
    re.VERBOSE,
)

_SYM = re.compile(
    r"(?P<name>[A-Za-z_][A-Za-z0-9_]*)\s*(?P<tilde>~?)\s*\{(?P<ids>[^}]*)\}"
    r"(?:\s*\[\s*m\s*=\s*(?P<label>\d+)\s*\])?"
)


def tokenize(text: str) -> list[tuple[str, str]]:
    tokens = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r} at {pos} in {text!r}")
        kind = m.lastgroup
        if kind != "ws":
            tokens.append((kind, m.group()))
        pos = m.end()
    return tokens


def _symbol_node(raw: str):
    m = _SYM.fullmatch(raw)
    if m is None:
        raise ParseError(f"malformed symbol {raw!r}")
    body = m.group("ids").strip()
    try:
        ids = tuple(sorted(int(p) for p in body.split(","))) if body else ()
    except ValueError:
        raise ParseError(f"symbol index set must list integers: {raw!r}") from None
    if len(set(ids)) != len(ids):
        raise ParseError(f"repeated index in symbol {raw!r}")
    label = m.group("label")
    return ("sym", m.group("name"), bool(m.group("tilde")), ids,
            None if label is None else int(label))


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value):
        kind, val = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}, got {val!r} in {self.text!r}")

    def parse(self):
        if not self.tokens:
            raise ParseError("empty expression")
        node = self.sum()
        if self.i != len(self.tokens):
            raise ParseError(f"trailing input {self.peek()[1]!r} in {self.text!r}")
        return node

    def sum(self):
        if self.peek()[1] in ("+", "-"):
            sign = self.take()[1]
            node = self.product()
            if sign == "-":
                node = ("neg", node)
        else:
            node = self.product()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.product()
            node = ("add" if op == "+" else "sub", node, rhs)
        return node

    def product(self):
        node = self.power()
        while self.peek()[1] == "*":
            self.take()
            node = ("mul", node, self.power())
        return node

    def power(self):
        base = self.atom()
        if self.peek()[1] == "^":
            self.take()
            base = ("pow", base, self.exponent())
        return base

    def exponent(self) -> int:
        kind, val = self.take()
        if val == "(":
            k = self.exponent()
            self.expect(")")
            return k
        if val in ("-", "+"):
            k = self.exponent()
            return -k if val == "-" else k
        if kind != "int":
            raise ParseError(f"exponent must be an integer in {self.text!r}")
        return int(val)

    def atom(self):
        kind, val = self.take()
        if kind == "int":
            return ("int", int(val))
        if kind == "ident":
            return ("var", val)
        if kind == "sym":
            return _symbol_node(val)
        if val == "(":
            node = self.sum()
            self.expect(")")
            return node
        if val == "-":
            return ("neg", self.power())
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse(text: str):
    return _Parser(text).parse()


def evaluate(node, *, const, var, sym, zero=None):
    """Fold an AST into a ring.

    ``const(n)``, ``var(name)`` and ``sym(node)`` build leaves; the results
    must support ``+ - *`` and ``**`` with integer exponents.
    """

    def go(n):
        tag = n[0]
        if tag == "int":
            return const(n[1])
        if tag == "var":
            return var(n[1])
        if tag == "sym":
            return sym(n)
        if tag == "neg":
            return -go(n[1])
        if tag == "add":
            return go(n[1]) + go(n[2])
        if tag == "sub":
            return go(n[1]) - go(n[2])
        if tag == "mul":
            return go(n[1]) * go(n[2])
        if tag == "pow":
            return go(n[1]) ** n[2]
        raise ParseError(f"unknown node {tag!r}")  # pragma: no cover

    return go(node)
