"""The localized equivariant Grothendieck ring as a free ``Z[L^{±1}]``-module.

Elements are finite combinations of stratum symbols with Laurent-polynomial
coefficients.  Scissor and affine-bundle relations are applied when data is
entered, so equality here is structural.  Two stratum symbols are never
multiplied: every formula this package evaluates is linear in the classes.

Text form::

    (L - 1)*E~{1,3}[m=2] + E~{3,4}[m=1] + 2*L - 1

A bare coefficient (``2*L - 1`` above) multiplies the unit symbol, the
class of the base; ``E{}`` is accepted as an explicit spelling of it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

from . import _expr
from .errors import MissingAssignment, MissingQuotient, ParseError, PoleAtZero
from .laurent import ONE, LaurentPoly, Scalar

EQUIVARIANT = "equivariant"
NAIVE = "naive"


@dataclass(frozen=True)
class StratumSymbol:
    """A named class ``[E~_J^o]`` (equivariant) or ``[E_J^o]`` (naive)."""

    name: str
    index_set: tuple[int, ...]
    action_label: int = 1
    flavor: str = NAIVE

    def __post_init__(self):
        object.__setattr__(self, "index_set", tuple(sorted(self.index_set)))
        if self.flavor not in (EQUIVARIANT, NAIVE):
            raise ValueError(f"flavor must be {EQUIVARIANT!r} or {NAIVE!r}")
        if self.action_label < 1:
            raise ValueError("action label must be a positive integer")
        if not self.index_set and (self.name, self.action_label, self.flavor) != ("E", 1, NAIVE):
            raise ValueError("the empty index set is reserved for the unit symbol E{}")
        if self.flavor == NAIVE and self.action_label != 1:
            raise ValueError("naive symbols carry the trivial action label 1")

    @classmethod
    def equivariant(cls, J: Iterable[int], m: int, name: str = "E") -> "StratumSymbol":
        return cls(name, tuple(J), m, EQUIVARIANT)

    @classmethod
    def naive(cls, J: Iterable[int], name: str = "E") -> "StratumSymbol":
        return cls(name, tuple(J), 1, NAIVE)

    @property
    def is_unit(self) -> bool:
        return not self.index_set

    @property
    def is_equivariant(self) -> bool:
        return self.flavor == EQUIVARIANT

    def sort_key(self):
        return (self.flavor != NAIVE, len(self.index_set) > 0, self.index_set, self.name, self.action_label)

    def quotient(self) -> "StratumSymbol":
        """The canonical naive partner: same name and index set."""
        if not self.is_equivariant:
            return self
        return StratumSymbol.naive(self.index_set, self.name)

    def __str__(self):
        ids = ",".join(str(i) for i in self.index_set)
        if self.is_equivariant:
            return f"{self.name}~{{{ids}}}[m={self.action_label}]"
        return f"{self.name}{{{ids}}}"

    def latex(self) -> str:
        ids = ",".join(str(i) for i in self.index_set)
        if self.is_unit:
            return "1"
        if self.is_equivariant:
            return rf"[\widetilde{{{self.name}}}^{{o}}_{{{ids}}}]"
        return rf"[{self.name}^{{o}}_{{{ids}}}]"


UNIT = StratumSymbol("E", (), 1, NAIVE)


class GrElement:
    """Element of the free module on stratum symbols over ``Z[L^{±1}]``.

    >>> s = StratumSymbol.equivariant([1], 1)
    >>> x = GrElement.from_symbol(s, LaurentPoly.parse("L - 1")) + 3
    >>> str(x)
    '3 + (L - 1)*E~{1}[m=1]'
    >>> GrElement.parse(str(x)) == x
    True
    """

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[StratumSymbol, Scalar] | None = None):
        clean = {}
        for sym, c in (terms or {}).items():
            c = LaurentPoly.coerce(c)
            if c:
                clean[sym] = c
        self._terms = dict(sorted(clean.items(), key=lambda kv: kv[0].sort_key()))
        self._hash = None

    @classmethod
    def from_symbol(cls, sym: StratumSymbol, coeff: Scalar = 1) -> "GrElement":
        return cls({sym: coeff})

    @classmethod
    def scalar(cls, c: Scalar) -> "GrElement":
        return cls({UNIT: c})

    @classmethod
    def coerce(cls, x) -> "GrElement":
        if isinstance(x, GrElement):
            return x
        if isinstance(x, StratumSymbol):
            return cls.from_symbol(x)
        return cls.scalar(LaurentPoly.coerce(x))

    @classmethod
    def parse(cls, text: str) -> "GrElement":
        def var(name):
            if name != "L":
                raise ParseError(f"unknown variable {name!r} in {text!r}")
            return cls.scalar(LaurentPoly.L())

        def sym(node):
            _, name, tilde, ids, label = node
            try:
                if tilde:
                    return cls.from_symbol(StratumSymbol(name, ids, 1 if label is None else label, EQUIVARIANT))
                if label not in (None, 1):
                    raise ParseError(f"naive symbol {name}{{...}} cannot carry [m={label}]")
                return cls.from_symbol(StratumSymbol(name, ids, 1, NAIVE))
            except ValueError as exc:
                raise ParseError(str(exc)) from None

        try:
            return _expr.evaluate(_expr.parse(text), const=cls.scalar, var=var, sym=sym)
        except ValueError as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(str(exc)) from None

    # -- inspection ---------------------------------------------------------

    def items(self) -> Iterator[tuple[StratumSymbol, LaurentPoly]]:
        return iter(self._terms.items())

    def symbols(self) -> list[StratumSymbol]:
        return list(self._terms)

    def coefficient(self, sym: StratumSymbol) -> LaurentPoly:
        return self._terms.get(sym, LaurentPoly())

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self):
        return len(self._terms)

    # -- module structure ---------------------------------------------------

    def __add__(self, other):
        try:
            other = GrElement.coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self._terms)
        for s, c in other._terms.items():
            out[s] = out[s] + c if s in out else c
        return GrElement(out)

    __radd__ = __add__

    def __neg__(self):
        return GrElement({s: -c for s, c in self._terms.items()})

    def __sub__(self, other):
        try:
            other = GrElement.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return GrElement.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, GrElement):
            # the unit symbol is the ring identity; anything else is off-limits
            if set(other._terms) <= {UNIT}:
                return self.scale(other.coefficient(UNIT))
            if set(self._terms) <= {UNIT}:
                return other.scale(self.coefficient(UNIT))
            raise TypeError("products of two non-unit stratum classes are not supported")
        try:
            c = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if set(self._terms) <= {UNIT}:
            return GrElement.scalar(self.coefficient(UNIT) ** n)
        if n == 1:
            return self
        raise TypeError("only scalar Grothendieck-ring elements can be raised to a power")

    def scale(self, c: Scalar) -> "GrElement":
        c = LaurentPoly.coerce(c)
        return GrElement({s: c * v for s, v in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly)) and not isinstance(other, bool):
            other = GrElement.scalar(other)
        if not isinstance(other, GrElement):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self._terms)

    def map_coefficients(self, fn) -> "GrElement":
        return GrElement({s: fn(c) for s, c in self._terms.items()})

    # -- printing -----------------------------------------------------------

    def __str__(self):
        if not self._terms:
            return "0"
        parts = []
        for i, (sym, c) in enumerate(self._terms.items()):
            negative = False
            if c.is_monomial():
                ((k, v),) = c.items()
                negative = v < 0
                body = str(-c if negative else c)
                if sym.is_unit:
                    text = body
                elif body == "1":
                    text = str(sym)
                else:
                    text = f"{body}*{sym}"
            else:
                text = f"({c})" if sym.is_unit else f"({c})*{sym}"
            if i == 0:
                parts.append(f"-{text}" if negative else text)
            else:
                parts.append(f" {'-' if negative else '+'} {text}")
        return "".join(parts)

    def __repr__(self):
        return f"GrElement({str(self)!r})"

    def latex(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for i, (sym, c) in enumerate(self._terms.items()):
            negative = c.is_monomial() and next(iter(c.items()))[1] < 0
            if negative:
                c = -c
            coeff = c.latex()
            if sym.is_unit:
                text = f"({coeff})" if not c.is_monomial() else coeff
            elif c == ONE:
                text = sym.latex()
            else:
                text = (f"({coeff})" if not c.is_monomial() else coeff) + sym.latex()
            if i == 0:
                parts.append(f"-{text}" if negative else text)
            else:
                parts.append(f" {'-' if negative else '+'} {text}")
        return "".join(parts)


def gr_add(a: GrElement, b: GrElement) -> GrElement:
    return a + b


def gr_scale(c: Scalar, a: GrElement) -> GrElement:
    return a.scale(c)


def gr_forget(a: GrElement, quotients: Mapping[StratumSymbol, GrElement] | None = None) -> GrElement:
    """Send each equivariant symbol to its naive quotient, linearly.

    Without ``quotients`` every equivariant symbol goes to its canonical
    partner (same name and index set, naive flavor).  With ``quotients``
    each equivariant symbol must be a key of the mapping, otherwise
    :class:`MissingQuotient` is raised.  Naive symbols pass through.
    """
    out = GrElement()
    for sym, c in a.items():
        if not sym.is_equivariant:
            out = out + GrElement.from_symbol(sym, c)
        elif quotients is None:
            out = out + GrElement.from_symbol(sym.quotient(), c)
        else:
            try:
                image = quotients[sym]
            except KeyError:
                raise MissingQuotient(f"no declared quotient for {sym}") from None
            out = out + GrElement.coerce(image).scale(c)
    return out


def gr_specialize(a: GrElement, L_value, symbol_values: Mapping[StratumSymbol, object]) -> Fraction:
    """Evaluate at ``L = L_value`` with each symbol sent to a rational number.

    The unit symbol evaluates to 1 unless ``symbol_values`` says otherwise.
    """
    L_value = Fraction(L_value)
    total = Fraction(0)
    for sym, c in a.items():
        if sym in symbol_values:
            value = Fraction(symbol_values[sym])
        elif sym.is_unit:
            value = Fraction(1)
        else:
            raise MissingAssignment(f"no value assigned to {sym}")
        if L_value == 0 and c.min_degree() < 0:
            raise PoleAtZero(f"coefficient {c} of {sym} has a pole at L = 0")
        total += c.evaluate(L_value) * value
    return total


def gr_reduce(a: GrElement, modulus: str) -> GrElement:
    """Reduce the coefficients modulo ``L-1`` (``L -> 1``) or ``L`` (``L -> 0``)."""
    return a.map_coefficients(lambda c: c.reduce(modulus))


def measure_cylinder(class_C: GrElement, n: int, m: int) -> GrElement:
    """Measure ``[theta_n(A)] L^{-(n+1)m}`` of a cylinder of degree ``n``."""
    if n < 0 or m < 0:
        raise ValueError("n and m must be nonnegative")
    return class_C.scale(LaurentPoly.L(-(n + 1) * m))
