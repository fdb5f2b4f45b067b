"""Rational generating series with Grothendieck-ring coefficients.

A :class:`RationalSeries` is ``P(T) / prod (1 - L^a T^b)^e`` where ``P`` is
a polynomial in ``T`` with :class:`GrElement` coefficients.  Denominators
stay factored and never contain stratum symbols, so the shape is closed
under every operation used here; equality is decided by cross-multiplying
to the least common denominator.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping

from .errors import NoLimit
from .grring import GrElement, StratumSymbol, gr_specialize
from .laurent import LaurentPoly, Scalar

Factor = tuple[int, int]  # (a, b) standing for 1 - L^a T^b


def _clean(num: Mapping[int, GrElement]) -> dict[int, GrElement]:
    out = {}
    for j, c in num.items():
        if j < 0:
            raise ValueError("negative T-exponents are not allowed")
        if c:
            out[int(j)] = c
    return dict(sorted(out.items()))


def _times_factor(num: dict[int, GrElement], a: int, b: int) -> dict[int, GrElement]:
    """Multiply a numerator by ``1 - L^a T^b``."""
    out = dict(num)
    for j, c in num.items():
        k = j + b
        shifted = -c.scale(LaurentPoly.L(a))
        out[k] = out[k] + shifted if k in out else shifted
    return _clean(out)


def _divide_factor(num: dict[int, GrElement], a: int, b: int):
    """Exact quotient of a numerator by ``1 - L^a T^b``, or None."""
    if not num:
        return {}
    top = max(num)
    if top < b:
        return None
    zero = GrElement()
    q: dict[int, GrElement] = {}
    for j in range(top - b + 1):
        prev = q.get(j - b, zero)
        q[j] = num.get(j, zero) + prev.scale(LaurentPoly.L(a))
    for j in range(top - b + 1, top + 1):
        prev = q.get(j - b, zero)
        if num.get(j, zero) + prev.scale(LaurentPoly.L(a)):
            return None
    return _clean(q)


class RationalSeries:
    """``numerator / prod (1 - L^a T^b)^e`` in a cancelled normal form.

    >>> u = RationalSeries.generator(-1, 1)
    >>> str(u)
    'L^-1*T / (1 - L^-1 T)'
    >>> u == RationalSeries({1: GrElement.scalar(LaurentPoly.L(-1)), 2: GrElement.scalar(-LaurentPoly.L(-2))}, {(-1, 1): 2})
    True
    """

    __slots__ = ("numerator", "denominator")

    def __init__(self, numerator: Mapping[int, object] | None = None,
                 denominator: Mapping[Factor, int] | Iterable[Factor] | None = None,
                 *, normalize: bool = True):
        num = _clean({j: GrElement.coerce(c) for j, c in (numerator or {}).items()})
        if denominator is None:
            den: Counter = Counter()
        elif isinstance(denominator, Mapping):
            den = Counter({(int(a), int(b)): int(e) for (a, b), e in denominator.items() if e})
        else:
            den = Counter((int(a), int(b)) for a, b in denominator)
        for (a, b), e in den.items():
            if b < 1 or e < 0:
                raise ValueError(f"bad denominator factor (1 - L^{a} T^{b})^{e}")
        if normalize:
            num, den = self._cancel(num, den)
        self.numerator: dict[int, GrElement] = num
        self.denominator: dict[Factor, int] = dict(sorted(den.items(), key=lambda kv: (kv[0][1], kv[0][0])))

    @staticmethod
    def _cancel(num, den):
        if not num:
            return {}, Counter()
        den = Counter(den)
        for f in sorted(den):
            while den[f]:
                q = _divide_factor(num, *f)
                if q is None:
                    break
                num = q
                den[f] -= 1
        return num, +den

    # -- constructors -------------------------------------------------------

    @classmethod
    def constant(cls, c) -> "RationalSeries":
        return cls({0: GrElement.coerce(c)})

    @classmethod
    def monomial(cls, c, j: int) -> "RationalSeries":
        return cls({j: GrElement.coerce(c)})

    @classmethod
    def generator(cls, a: int, b: int) -> "RationalSeries":
        """``L^a T^b / (1 - L^a T^b)``."""
        return cls({b: GrElement.scalar(LaurentPoly.L(a))}, {(a, b): 1})

    @classmethod
    def product_term(cls, coeff, factors: Iterable[Factor]) -> "RationalSeries":
        """``coeff * prod L^a T^b / (1 - L^a T^b)`` over ``factors``."""
        factors = list(factors)
        a_tot = sum(a for a, _ in factors)
        b_tot = sum(b for _, b in factors)
        return cls({b_tot: GrElement.coerce(coeff).scale(LaurentPoly.L(a_tot))}, Counter(factors))

    # -- inspection ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.numerator

    def degree(self) -> int:
        return max(self.numerator) if self.numerator else -1

    def denominator_degree(self) -> int:
        return sum(b * e for (_, b), e in self.denominator.items())

    def factors(self) -> list[tuple[int, int, int]]:
        return [(a, b, e) for (a, b), e in self.denominator.items()]

    def symbols(self) -> set[StratumSymbol]:
        return {s for c in self.numerator.values() for s in c.symbols()}

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, den: Counter) -> dict[int, GrElement]:
        num = dict(self.numerator)
        for (a, b), e in den.items():
            for _ in range(e - self.denominator.get((a, b), 0)):
                num = _times_factor(num, a, b)
        return num

    @staticmethod
    def _lcm(x: "RationalSeries", y: "RationalSeries") -> Counter:
        den = Counter(x.denominator)
        for f, e in y.denominator.items():
            den[f] = max(den[f], e)
        return den

    def __add__(self, other):
        if not isinstance(other, RationalSeries):
            try:
                other = RationalSeries.constant(other)
            except TypeError:
                return NotImplemented
        den = self._lcm(self, other)
        p, q = self._lift(den), other._lift(den)
        for j, c in q.items():
            p[j] = p[j] + c if j in p else c
        return RationalSeries(p, den)

    __radd__ = __add__

    def __neg__(self):
        return RationalSeries({j: -c for j, c in self.numerator.items()}, self.denominator, normalize=False)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, RationalSeries):
            num: dict[int, GrElement] = {}
            for i, c in self.numerator.items():
                for j, d in other.numerator.items():
                    prod = c * d
                    num[i + j] = num[i + j] + prod if i + j in num else prod
            return RationalSeries(num, Counter(self.denominator) + Counter(other.denominator))
        if isinstance(other, GrElement):
            return RationalSeries({j: c * other for j, c in self.numerator.items()}, self.denominator)
        try:
            c = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def scale(self, c: Scalar) -> "RationalSeries":
        return RationalSeries({j: v.scale(c) for j, v in self.numerator.items()}, self.denominator)

    def map_coefficients(self, fn: Callable[[GrElement], GrElement]) -> "RationalSeries":
        return RationalSeries({j: fn(c) for j, c in self.numerator.items()}, self.denominator)

    def equals(self, other: "RationalSeries") -> bool:
        den = self._lcm(self, other)
        return self._lift(den) == other._lift(den)

    def __eq__(self, other):
        if not isinstance(other, RationalSeries):
            return NotImplemented
        return self.equals(other)

    __hash__ = None  # equality is not structural

    # -- series operations --------------------------------------------------

    def expand(self, D: int) -> list[GrElement]:
        """Coefficients of ``T^0 .. T^D`` of the power series."""
        if D < 0:
            return []
        zero = GrElement()
        coeffs = [self.numerator.get(j, zero) for j in range(D + 1)]
        for (a, b), e in self.denominator.items():
            La = LaurentPoly.L(a)
            for _ in range(e):
                for j in range(b, D + 1):
                    coeffs[j] = coeffs[j] + coeffs[j - b].scale(La)
        return coeffs

    def substitute_scaled(self, k: int) -> "RationalSeries":
        """Replace ``T`` by ``L^k T``."""
        num = {j: c.scale(LaurentPoly.L(k * j)) for j, c in self.numerator.items()}
        den = {(a + k * b, b): e for (a, b), e in self.denominator.items()}
        return RationalSeries(num, den)

    def limit_T_infinity(self) -> GrElement:
        """Formal limit ``T -> infinity``: each ``L^a T^b/(1 - L^a T^b)`` goes to -1.

        The generators span exactly the series whose numerator degree does not
        exceed the denominator degree, and on that ring the limit is the ratio
        of top coefficients.
        """
        if not self.numerator:
            return GrElement()
        top, dd = self.degree(), self.denominator_degree()
        if top > dd:
            raise NoLimit(f"numerator degree {top} exceeds denominator degree {dd}")
        if top < dd:
            return GrElement()
        sign = (-1) ** sum(self.denominator.values())
        shift = -sum(a * e for (a, _), e in self.denominator.items())
        return self.numerator[top].scale(LaurentPoly({shift: sign}))

    def specialize(self, q, symbol_values: Mapping[StratumSymbol, object]) -> "PointCountSeries":
        q = Fraction(q)
        num = {j: gr_specialize(c, q, symbol_values) for j, c in self.numerator.items()}
        den = [(q ** a, b, e) for (a, b), e in self.denominator.items()]
        return PointCountSeries(num, den)

    # -- printing -----------------------------------------------------------

    def numerator_str(self) -> str:
        if not self.numerator:
            return "0"
        parts = []
        for j, c in self.numerator.items():
            mono = "" if j == 0 else ("T" if j == 1 else f"T^{j}")
            text = str(c) if len(c) == 1 else f"({c})"
            parts.append(text if not mono else f"{text}*{mono}")
        out = parts[0]
        for p in parts[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def denominator_str(self) -> str:
        out = []
        for (a, b), e in self.denominator.items():
            mono = factor_text(a, b)
            base = f"(1 - {mono})"
            out.append(base if e == 1 else f"{base}^{e}")
        return " ".join(out)

    def __str__(self):
        num = self.numerator_str()
        if not self.denominator:
            return num
        if len(self.numerator) == 1:
            return f"{num} / {self.denominator_str()}"
        return f"({num}) / {self.denominator_str()}"

    def __repr__(self):
        return f"RationalSeries({str(self)!r})"


def factor_text(a: int, b: int) -> str:
    L = "" if a == 0 else ("L" if a == 1 else f"L^{a}")
    T = "T" if b == 1 else f"T^{b}"
    return f"{L} {T}" if L else T


def rs_equal(x: RationalSeries, y: RationalSeries) -> bool:
    return x.equals(y)


def expand(x: RationalSeries, D: int) -> list[GrElement]:
    return x.expand(D)


def substitute_scaled(x: RationalSeries, k: int) -> RationalSeries:
    return x.substitute_scaled(k)


def limit_T_infinity(x: RationalSeries) -> GrElement:
    return x.limit_T_infinity()


def specialize_pointcount(x: RationalSeries, q, symbol_values: Mapping[StratumSymbol, object]) -> "PointCountSeries":
    """Evaluate at ``L = q`` with each symbol replaced by a rational number."""
    if q < 2:
        raise ValueError("q must be at least 2")
    return x.specialize(q, symbol_values)


@dataclass(frozen=True)
class PointCountSeries:
    """Rational function of ``T`` over Q: ``sum n_j T^j / prod (1 - c T^b)^e``."""

    numerator: Mapping[int, Fraction]
    denominator: tuple[tuple[Fraction, int, int], ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "numerator", {j: Fraction(c) for j, c in sorted(self.numerator.items()) if c})
        object.__setattr__(self, "denominator", tuple((Fraction(c), b, e) for c, b, e in self.denominator))

    def expand(self, D: int) -> list[Fraction]:
        coeffs = [self.numerator.get(j, Fraction(0)) for j in range(D + 1)]
        for c, b, e in self.denominator:
            for _ in range(e):
                for j in range(b, D + 1):
                    coeffs[j] += c * coeffs[j - b]
        return coeffs

    def coefficient(self, d: int) -> Fraction:
        return self.expand(d)[d]

    def __call__(self, T) -> Fraction:
        T = Fraction(T)
        val = sum((c * T ** j for j, c in self.numerator.items()), Fraction(0))
        for c, b, e in self.denominator:
            val /= (1 - c * T ** b) ** e
        return val

    def __str__(self):
        num = " + ".join(f"{c}*T^{j}" for j, c in self.numerator.items()) or "0"
        den = " ".join(f"(1 - {c}*T^{b})" + (f"^{e}" if e != 1 else "") for c, b, e in self.denominator)
        return f"({num}) / {den}" if den else num
