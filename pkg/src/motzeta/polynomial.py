"""Integer polynomials in ``x1..xk`` (aliases ``x, y, z``) for the jet oracle."""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import _expr
from .errors import ParseError

ALIASES = {"x": 1, "y": 2, "z": 3}
_INDEXED = re.compile(r"x([1-9]\d*)")


def _var_index(name: str) -> int:
    if name in ALIASES:
        return ALIASES[name]
    m = _INDEXED.fullmatch(name)
    if m is None:
        raise ParseError(f"unknown variable {name!r}; use x1..xk or x, y, z")
    return int(m.group(1))


@dataclass(frozen=True)
class Polynomial:
    """Sparse polynomial: exponent tuple -> nonzero integer coefficient.

    >>> f = Polynomial.parse("x^2 + y^3")
    >>> f.n_vars, f.degree()
    (2, 3)
    """

    n_vars: int
    terms: tuple[tuple[tuple[int, ...], int], ...]

    @classmethod
    def from_dict(cls, n_vars: int, terms: dict) -> "Polynomial":
        clean = {}
        for exps, c in terms.items():
            exps = tuple(exps) + (0,) * (n_vars - len(exps))
            if len(exps) != n_vars:
                raise ValueError("exponent tuple longer than the number of variables")
            clean[exps] = clean.get(exps, 0) + int(c)
        return cls(n_vars, tuple(sorted((e, c) for e, c in clean.items() if c)))

    @classmethod
    def parse(cls, text: str, n_vars: int | None = None) -> "Polynomial":
        node = _expr.parse(text)
        used = []

        def scan(n):
            if n[0] == "var":
                used.append(_var_index(n[1]))
            elif n[0] == "sym":
                raise ParseError(f"unexpected symbol in polynomial {text!r}")
            else:
                for child in n[1:]:
                    if isinstance(child, tuple):
                        scan(child)

        scan(node)
        width = max(used, default=0)
        if n_vars is None:
            n_vars = max(width, 1)
        elif width > n_vars:
            raise ParseError(f"{text!r} uses x{width} but only {n_vars} variables were requested")

        def const(c):
            return _P(n_vars, {(0,) * n_vars: c})

        def var(name):
            e = [0] * n_vars
            e[_var_index(name) - 1] = 1
            return _P(n_vars, {tuple(e): 1})

        try:
            value = _expr.evaluate(node, const=const, var=var, sym=None)
        except ValueError as exc:
            raise ParseError(str(exc)) from None
        return cls.from_dict(n_vars, value.terms)

    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=0)

    def is_zero(self) -> bool:
        return not self.terms

    def derivative(self, var: int) -> "Polynomial":
        """Partial derivative in the variable with 0-based index ``var``."""
        out = {}
        for e, c in self.terms:
            if e[var]:
                e2 = list(e)
                e2[var] -= 1
                out[tuple(e2)] = out.get(tuple(e2), 0) + c * e[var]
        return Polynomial.from_dict(self.n_vars, out)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial.from_dict(self.n_vars, (_P(self.n_vars, dict(self.terms)) * _P(other.n_vars, dict(other.terms))).terms)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return Polynomial.from_dict(self.n_vars, (_P(self.n_vars, dict(self.terms)) - _P(other.n_vars, dict(other.terms))).terms)

    def evaluate(self, point, q: int) -> int:
        total = 0
        for e, c in self.terms:
            v = c
            for x, k in zip(point, e):
                v *= pow(int(x), k, q)
            total += v
        return total % q

    def __str__(self):
        if not self.terms:
            return "0"
        names = [f"x{i + 1}" for i in range(self.n_vars)]
        parts = []
        for e, c in sorted(self.terms, key=lambda t: (-sum(t[0]), t[0])):
            mono = "*".join(n if k == 1 else f"{n}^{k}" for n, k in zip(names, e) if k)
            body = mono if abs(c) == 1 and mono else (f"{abs(c)}*{mono}" if mono else str(abs(c)))
            parts.append(("- " if c < 0 else "+ ") + body)
        text = " ".join(parts)
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


class _P:
    """Mutable helper used only while folding the parse tree."""

    def __init__(self, n, terms):
        self.n = n
        self.terms = {e: c for e, c in terms.items() if c}

    def __add__(self, o):
        out = dict(self.terms)
        for e, c in o.terms.items():
            out[e] = out.get(e, 0) + c
        return _P(self.n, out)

    def __neg__(self):
        return _P(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, o):
        return self + (-o)

    def __mul__(self, o):
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return _P(self.n, out)

    def __pow__(self, k):
        if k < 0:
            raise ValueError("polynomial exponents must be nonnegative")
        out = _P(self.n, {(0,) * self.n: 1})
        for _ in range(k):
            out = out * self
        return out
