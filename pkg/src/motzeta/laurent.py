"""Exact Laurent polynomials in the Lefschetz class ``L``.

A :class:`LaurentPoly` is the scalar ring ``Z[L, L^-1]`` over which every
Grothendieck-ring element in this package is a free module.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterator, Mapping, Union

from . import _expr
from .errors import NotReducible, ParseError, PoleAtZero

Scalar = Union["LaurentPoly", int]


class LaurentPoly:
    """Integer Laurent polynomial ``sum c_k L^k`` with no stored zeros.

    Instances are immutable and hashable; equality is equality of the
    canonical term maps.

    >>> L = LaurentPoly.L()
    >>> str((L - 1) ** 2)
    'L^2 - 2*L + 1'
    >>> LaurentPoly.parse("L^-1 * (L + 1)") == 1 + L ** -1
    True
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[int, int] | None = None):
        clean = {}
        if terms:
            for k, c in terms.items():
                if c:
                    clean[int(k)] = int(c)
        self._terms = dict(sorted(clean.items(), reverse=True))
        self._hash = None

    @classmethod
    def L(cls, power: int = 1) -> "LaurentPoly":
        return cls({power: 1})

    @classmethod
    def const(cls, c: int) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def coerce(cls, x: Scalar) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, int) and not isinstance(x, bool):
            return cls({0: x})
        raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        def var(name):
            if name != "L":
                raise ParseError(f"unknown variable {name!r}; only L is allowed")
            return cls.L()

        def sym(node):
            raise ParseError("stratum symbols are not allowed in a Laurent polynomial")

        return cls.coerce(_expr.evaluate(_expr.parse(text), const=cls.const, var=var, sym=sym))

    # -- inspection ---------------------------------------------------------

    @property
    def terms(self) -> dict[int, int]:
        return dict(self._terms)

    def items(self) -> Iterator[tuple[int, int]]:
        return iter(self._terms.items())

    def is_zero(self) -> bool:
        return not self._terms

    def is_monomial(self) -> bool:
        return len(self._terms) == 1

    def is_constant(self) -> bool:
        return not self._terms or set(self._terms) == {0}

    def min_degree(self) -> int:
        return min(self._terms) if self._terms else 0

    def max_degree(self) -> int:
        return max(self._terms) if self._terms else 0

    def coefficient(self, k: int) -> int:
        return self._terms.get(k, 0)

    # -- ring structure -----------------------------------------------------

    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for k, c in other._terms.items():
            out[k] = out.get(k, 0) + c
        return LaurentPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        out: dict[int, int] = {}
        for k1, c1 in self._terms.items():
            for k2, c2 in other._terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + c1 * c2
        return LaurentPoly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            # only monomials are units of Z[L^{±1}]
            if len(self._terms) != 1:
                raise ValueError("only monomials c*L^k with c = ±1 can be inverted")
            ((k, c),) = self._terms.items()
            if c not in (1, -1):
                raise ValueError("only monomials c*L^k with c = ±1 can be inverted")
            return LaurentPoly({k * n: c ** (-n)})
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by ``L^k``."""
        return LaurentPoly({e + k: c for e, c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, int) and not isinstance(other, bool):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    # -- evaluation ---------------------------------------------------------

    def evaluate(self, value) -> Fraction:
        value = Fraction(value)
        if value == 0:
            if any(k < 0 for k in self._terms):
                raise PoleAtZero(f"{self} has a pole at L = 0")
            return Fraction(self._terms.get(0, 0))
        return sum((c * value ** k for k, c in self._terms.items()), Fraction(0))

    def reduce(self, modulus: str) -> "LaurentPoly":
        """Image in ``Z[L^{±1}]/(L-1)`` or ``Z[L]/(L)`` as a constant."""
        if modulus == "L-1":
            return LaurentPoly.const(sum(self._terms.values()))
        if modulus == "L":
            if any(k < 0 for k in self._terms):
                raise NotReducible(f"{self} has negative powers of L; cannot reduce modulo L")
            return LaurentPoly.const(self._terms.get(0, 0))
        raise ValueError(f"unknown modulus {modulus!r}; use 'L-1' or 'L'")

    # -- printing -----------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, (k, c) in enumerate(self._terms.items()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = "L" if k == 1 else f"L^{k}"
                body = mono if mag == 1 else f"{mag}*{mono}"
            if i == 0:
                parts.append(body if sign == "+" else f"-{body}")
            else:
                parts.append(f" {sign} {body}")
        return "".join(parts)

    def __repr__(self):
        return f"LaurentPoly({str(self)!r})"

    def latex(self) -> str:
        if not self._terms:
            return "0"
        out = []
        for i, (k, c) in enumerate(self._terms.items()):
            mag = abs(c)
            if k == 0:
                body = str(mag)
            else:
                mono = r"\mathbb{L}" if k == 1 else rf"\mathbb{{L}}^{{{k}}}"
                body = mono if mag == 1 else f"{mag}{mono}"
            if i == 0:
                out.append(body if c > 0 else f"-{body}")
            else:
                out.append(f" {'-' if c < 0 else '+'} {body}")
        return "".join(out)


ZERO = LaurentPoly()
ONE = LaurentPoly.const(1)
L = LaurentPoly.L()
