"""Closed-form motivic series computed from resolution data.

Every function takes a validated :class:`ResolutionData` and sums over its
listed strata ``J``, each contributing ``(L-1)^(|J|-1) [E~_J^o]`` times a
product of one geometric factor per divisor in ``J``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping

from .errors import IncompleteData
from .grring import GrElement, gr_forget, gr_reduce
from .laurent import LaurentPoly
from .resolution import ResolutionData
from .series import RationalSeries

L_MINUS_1 = LaurentPoly({1: 1, 0: -1})
ONE_MINUS_L = -L_MINUS_1


@dataclass(frozen=True)
class SeriesTerm:
    """``coeff * prod L^a T^b / (1 - L^a T^b)``, kept for display."""

    J: tuple[int, ...]
    coeff: GrElement
    factors: tuple[tuple[int, int], ...]

    def series(self) -> RationalSeries:
        return RationalSeries.product_term(self.coeff, self.factors)


def _weighted_terms(res: ResolutionData, weight: Mapping[int, int], *, naive: bool = False,
                    prefactor: LaurentPoly | None = None) -> list[SeriesTerm]:
    terms = []
    for s in res.strata:
        if naive:
            if s.naive_class is None:
                raise IncompleteData(f"stratum {set(s.J)} has no naive class")
            coeff = s.naive_class.scale(L_MINUS_1 ** len(s.J))
        else:
            coeff = s.eq_class.scale(L_MINUS_1 ** (len(s.J) - 1))
        if prefactor is not None:
            coeff = coeff.scale(prefactor)
        factors = tuple((-weight[i], res.N(i)) for i in s.J)
        terms.append(SeriesTerm(s.J, coeff, factors))
    return terms


def _sum(terms) -> RationalSeries:
    total = RationalSeries()
    for t in terms:
        total = total + t.series()
    return total


def _xi(res: ResolutionData) -> dict[int, int]:
    return {d.id: d.xi for d in res.divisors}


def gelfand_leray_orders(res: ResolutionData) -> dict[int, int]:
    """Orders ``xi_i - N_i`` of the form ``omega/df`` along each divisor."""
    return {d.id: d.xi - d.N for d in res.divisors}


def zeta_terms(res: ResolutionData, *, naive: bool = False) -> list[SeriesTerm]:
    return _weighted_terms(res, _xi(res), naive=naive)


def zeta_equivariant(res: ResolutionData) -> RationalSeries:
    """``Z(f;T) = sum_J (L-1)^(|J|-1) [E~_J^o] prod L^-xi_i T^N_i / (1 - L^-xi_i T^N_i)``."""
    return _sum(zeta_terms(res))


def zeta_naive(res: ResolutionData) -> RationalSeries:
    return _sum(zeta_terms(res, naive=True))


def _check_mu(res: ResolutionData, mu: Mapping[int, int]) -> dict[int, int]:
    missing = [d.id for d in res.divisors if d.id not in mu]
    if missing:
        raise IncompleteData(f"no gauge-form order given for divisors {missing}")
    return {i: int(mu[i]) for i in res.ids}


def volume_terms(res: ResolutionData, mu: Mapping[int, int]) -> list[SeriesTerm]:
    return _weighted_terms(res, _check_mu(res, mu), prefactor=LaurentPoly.L(-res.m))


def volume_series(res: ResolutionData, mu: Mapping[int, int]) -> RationalSeries:
    """Volume Poincare series ``S(X, omega; T)`` for gauge-form orders ``mu``."""
    return _sum(volume_terms(res, mu))


def _solutions(Ns: list[int], d: int):
    """All ``k`` with every ``k_i >= 1`` and ``sum k_i N_i = d``, lexicographically."""
    if not Ns:
        return
    head, rest = Ns[0], Ns[1:]
    rest_min = sum(rest)
    for k in range(1, (d - rest_min) // head + 1):
        remaining = d - k * head
        if not rest:
            if remaining == 0:
                yield (k,)
            continue
        for tail in _solutions(rest, remaining):
            yield (k,) + tail


def local_singular_series(res: ResolutionData, mu: Mapping[int, int], d: int) -> GrElement:
    """Coefficient ``F(X, omega; d)`` by direct enumeration of the ``k_i``."""
    if d < 1:
        raise ValueError("d must be positive")
    mu = _check_mu(res, mu)
    total = GrElement()
    for s in res.strata:
        Ns = [res.N(i) for i in s.J]
        mus = [mu[i] for i in s.J]
        inner = LaurentPoly()
        for k in _solutions(Ns, d):
            inner = inner + LaurentPoly.L(-sum(ki * mi for ki, mi in zip(k, mus)))
        if inner:
            total = total + s.eq_class.scale(L_MINUS_1 ** (len(s.J) - 1) * inner)
    return total.scale(LaurentPoly.L(-res.m))


def contributing_strata(res: ResolutionData, d: int) -> list[tuple[int, ...]]:
    """Strata whose inner constrained sum at degree ``d`` is nonempty."""
    out = []
    for s in res.strata:
        if next(_solutions([res.N(i) for i in s.J], d), None) is not None:
            out.append(s.J)
    return out


def serre_invariant(res: ResolutionData, d: int) -> GrElement:
    """Sum of ``[E~_i^o]`` over divisors with ``N_i | d``, modulo ``L - 1``."""
    if d < 1:
        raise ValueError("d must be positive")
    total = GrElement()
    for s in res.strata:
        if len(s.J) == 1 and d % res.N(s.J[0]) == 0:
            total = total + s.eq_class
    return gr_reduce(total, "L-1")


def serre_series(res: ResolutionData) -> RationalSeries:
    total = RationalSeries()
    for s in res.strata:
        if len(s.J) == 1:
            total = total + RationalSeries.product_term(gr_reduce(s.eq_class, "L-1"), [(0, res.N(s.J[0]))])
    return total


def nearby_cycles_closed_form(res: ResolutionData) -> GrElement:
    total = GrElement()
    for s in res.strata:
        total = total + s.eq_class.scale(ONE_MINUS_L ** (len(s.J) - 1))
    return total


def nearby_cycles(res: ResolutionData) -> GrElement:
    """Motivic nearby cycles: the formal limit of ``-Z(f;T)`` at ``T = infinity``."""
    value = (-zeta_equivariant(res)).limit_T_infinity()
    expected = nearby_cycles_closed_form(res)
    if value != expected:
        raise ArithmeticError(f"limit {value} disagrees with the closed form {expected}")
    return value


def motivic_volume(res: ResolutionData) -> GrElement:
    return nearby_cycles(res).scale(LaurentPoly.L(-res.m))


def motivic_volume_from_series(res: ResolutionData, mu: Mapping[int, int]) -> GrElement:
    """Formal limit of ``-S(X, omega; T)``, which does not depend on ``mu``."""
    return (-volume_series(res, mu)).limit_T_infinity()


def inclusion_exclusion(pieces: Mapping[frozenset, GrElement]) -> GrElement:
    """``sum (-1)^(|A|-1) S_A`` over nonempty subsets ``A`` of the cover index set."""
    keys = [frozenset(k) for k in pieces]
    index = frozenset().union(*keys) if keys else frozenset()
    lookup = {frozenset(k): v for k, v in pieces.items()}
    total = GrElement()
    for r in range(1, len(index) + 1):
        for A in itertools.combinations(sorted(index), r):
            A = frozenset(A)
            if A not in lookup:
                raise IncompleteData(f"no piece for the intersection {set(A)}")
            total = total + GrElement.coerce(lookup[A]).scale((-1) ** (r - 1))
    return total


def integrate_gauge(components, m: int) -> GrElement:
    """``L^-m sum [C] L^-ord_C`` over components of a Neron smoothening."""
    total = GrElement()
    for cls, order in components:
        total = total + GrElement.coerce(cls).scale(LaurentPoly.L(-order))
    return total.scale(LaurentPoly.L(-m))


def compare_weil_zeta(res: ResolutionData) -> bool:
    """Check ``S(f;T) = L^-m Z(f; L T)`` with ``mu_i = xi_i - N_i``."""
    lhs = volume_series(res, gelfand_leray_orders(res))
    rhs = zeta_equivariant(res).substitute_scaled(1).scale(LaurentPoly.L(-res.m))
    return lhs.equals(rhs)


def forget_series(x: RationalSeries, quotients=None) -> RationalSeries:
    return x.map_coefficients(lambda c: gr_forget(c, quotients))


@dataclass(frozen=True)
class TopologicalZeta:
    """``Z_top(s) = sum_J chi(E_J^o) prod_{i in J} 1/(xi_i + s N_i)``.

    The formula is the standard one from the literature on topological zeta
    functions, not derived in this package; ``origin`` records that.
    """

    terms: tuple[tuple[int, tuple[tuple[int, int], ...]], ...]
    candidate_poles: tuple[Fraction, ...]
    origin: str = "standard topological zeta formula, taken from the literature"

    def __call__(self, s) -> Fraction:
        s = Fraction(s)
        total = Fraction(0)
        for chi, pairs in self.terms:
            val = Fraction(chi)
            for xi, N in pairs:
                val /= xi + s * N
            total += val
        return total

    def __str__(self):
        parts = []
        for chi, pairs in self.terms:
            if chi == 0:
                continue
            den = "".join(f"({xi} + {N}s)" for xi, N in pairs)
            sign = "-" if chi < 0 else "+"
            parts.append(f"{sign} {abs(chi)}/{den}")
        text = " ".join(parts)
        if not text:
            return "0"
        return text[2:] if text.startswith("+ ") else "-" + text[2:]


def specialize_topological(res: ResolutionData) -> TopologicalZeta:
    terms = []
    for s in res.strata:
        if s.chi is None:
            raise IncompleteData(f"stratum {set(s.J)} has no Euler characteristic")
        terms.append((s.chi, tuple((res.xi(i), res.N(i)) for i in s.J)))
    poles = tuple(Fraction(-d.xi, d.N) for d in res.divisors)
    return TopologicalZeta(tuple(terms), poles)

