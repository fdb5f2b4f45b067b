"""Combinatorial data of an embedded resolution with SNC special fiber.

A :class:`ResolutionData` lists the divisors ``E_i`` with multiplicities
``N_i`` and log-discrepancies ``xi_i`` (``K = sum (xi_i - 1) E_i``) together
with every nonempty open stratum ``E_J^o`` and its classes.  Emptiness of a
stratum is data: strata that are not listed are empty.
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field, replace
from functools import reduce
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Mapping

from .errors import (
    CenterTooSmall,
    DatasetError,
    EmptyCenter,
    IncompleteData,
    InvalidStratum,
    ParseError,
)
from .grring import GrElement, StratumSymbol
from .laurent import LaurentPoly

BUNDLED = ("smooth", "xy", "xsq", "cusp")


@dataclass(frozen=True)
class Divisor:
    id: int
    N: int
    xi: int


@dataclass(frozen=True)
class Stratum:
    """One nonempty stratum ``E_J^o``.

    ``count_poly`` is the number of ``F_q``-points of ``E_J^o`` as a
    polynomial in ``L -> q``; ``eq_count_poly`` is the same for the cover
    ``E~_J^o`` where it is known.
    """

    J: tuple[int, ...]
    eq_class: GrElement
    naive_class: GrElement | None = None
    chi: int | None = None
    count_poly: LaurentPoly | None = None
    eq_count_poly: LaurentPoly | None = None

    def __post_init__(self):
        object.__setattr__(self, "J", tuple(sorted(self.J)))


@dataclass(frozen=True)
class Diagnostic:
    kind: str
    J: tuple[int, ...] = ()
    message: str = ""

    def __str__(self):
        where = "{" + ",".join(map(str, self.J)) + "}" if self.J else ""
        return f"{self.kind}{where}: {self.message}" if self.message else f"{self.kind}{where}"


@dataclass(frozen=True)
class ResolutionData:
    name: str
    m: int
    divisors: tuple[Divisor, ...]
    strata: tuple[Stratum, ...] = field(default_factory=tuple)

    def __post_init__(self):
        object.__setattr__(self, "divisors", tuple(self.divisors))
        object.__setattr__(self, "strata", tuple(self.strata))

    # -- lookups ------------------------------------------------------------

    @property
    def ids(self) -> list[int]:
        return [d.id for d in self.divisors]

    def divisor(self, i: int) -> Divisor:
        for d in self.divisors:
            if d.id == i:
                return d
        raise InvalidStratum(f"unknown divisor id {i}")

    def N(self, i: int) -> int:
        return self.divisor(i).N

    def xi(self, i: int) -> int:
        return self.divisor(i).xi

    def stratum(self, J: Iterable[int]) -> Stratum | None:
        key = tuple(sorted(J))
        for s in self.strata:
            if s.J == key:
                return s
        return None

    def __iter__(self) -> Iterator[Stratum]:
        return iter(self.strata)

    def eligible_centers(self) -> list[tuple[int, ...]]:
        return [s.J for s in self.strata if len(s.J) >= 2]

    def quotient_map(self) -> dict[StratumSymbol, GrElement]:
        """Naive quotient of each equivariant symbol, read off the strata.

        A stratum whose equivariant class is ``c * S`` with ``c`` a unit of
        ``Z[L^{±1}]`` declares ``S -> c^{-1} * naive_class``.
        """
        out: dict[StratumSymbol, GrElement] = {}
        for s in self.strata:
            declared = _declared_quotient(s)
            if declared is not None:
                out.setdefault(declared[0], declared[1])
        return out


def _declared_quotient(s: Stratum):
    if s.naive_class is None or len(s.eq_class) != 1:
        return None
    ((sym, c),) = s.eq_class.items()
    if not sym.is_equivariant or not c.is_monomial():
        return None
    ((k, v),) = c.items()
    if v not in (1, -1):
        return None
    return sym, s.naive_class.scale(LaurentPoly({-k: v}))


def stratum_gcd(res: ResolutionData, J: Iterable[int]) -> int:
    J = tuple(J)
    if not J:
        raise InvalidStratum("a stratum needs a nonempty index set")
    known = set(res.ids)
    for i in J:
        if i not in known:
            raise InvalidStratum(f"unknown divisor id {i}")
    return reduce(math.gcd, (res.N(i) for i in J))


def validate(res: ResolutionData) -> list[Diagnostic]:
    diags: list[Diagnostic] = []
    if res.m < 0:
        diags.append(Diagnostic("BadDimension", (), f"m = {res.m} is negative"))
    seen: set[int] = set()
    for d in res.divisors:
        if d.id in seen:
            diags.append(Diagnostic("DuplicateDivisor", (d.id,)))
        seen.add(d.id)
        if d.N < 1 or d.xi < 1:
            diags.append(Diagnostic("BadDivisor", (d.id,), f"N = {d.N}, xi = {d.xi}; both must be >= 1"))

    listed: set[tuple[int, ...]] = set()
    for s in res.strata:
        if not s.J:
            diags.append(Diagnostic("EmptyIndexSet", (), "strata need a nonempty J"))
            continue
        if s.J in listed:
            diags.append(Diagnostic("DuplicateStratum", s.J))
        listed.add(s.J)
        unknown = [i for i in s.J if i not in seen]
        if unknown:
            diags.append(Diagnostic("UnknownDivisor", s.J, f"ids {unknown} are not divisors"))
            continue
        if len(s.J) > res.m + 1:
            diags.append(Diagnostic("CodimensionTooLarge", s.J, f"|J| exceeds the ambient dimension {res.m + 1}"))
        mJ = stratum_gcd(res, s.J)
        for sym, _ in s.eq_class.items():
            if not sym.is_equivariant:
                diags.append(Diagnostic("FlavorMismatch", s.J, f"{sym} in an equivariant class"))
            elif mJ % sym.action_label:
                diags.append(Diagnostic("LabelMismatch", s.J,
                                        f"{sym} has label {sym.action_label}, which does not divide m_J = {mJ}"))
        if s.naive_class is not None:
            for sym, _ in s.naive_class.items():
                if sym.is_equivariant:
                    diags.append(Diagnostic("FlavorMismatch", s.J, f"{sym} in a naive class"))

    for J in sorted(listed):
        for r in range(1, len(J)):
            for sub in itertools.combinations(J, r):
                if sub not in listed and all(i in seen for i in sub):
                    diags.append(Diagnostic("NotDownwardClosed", J, f"sub-stratum {set(sub)} is not listed"))
    for d in res.divisors:
        if (d.id,) not in listed:
            diags.append(Diagnostic("MissingSingleton", (d.id,), "every divisor needs its open stratum"))

    quotients: dict[StratumSymbol, GrElement] = {}
    for s in res.strata:
        declared = _declared_quotient(s)
        if declared is None:
            continue
        sym, image = declared
        if sym in quotients and quotients[sym] != image:
            diags.append(Diagnostic("QuotientMismatch", s.J, f"{sym} is declared with two different quotients"))
        quotients.setdefault(sym, image)
    return diags


def x0_linear_witness(res: ResolutionData, d: int):
    """Return ``(J, alpha)`` with ``d = sum alpha_j N_j``, all ``alpha_j >= 1``, or None.

    Only listed strata with ``|J| > 1`` are searched, in listing order.
    """
    if d < 1:
        raise ValueError("d must be positive")
    for s in res.strata:
        if len(s.J) < 2:
            continue
        Ns = [res.N(j) for j in s.J]
        alpha = _first_solution(Ns, d)
        if alpha is not None:
            return s.J, alpha
    return None


def is_X0_linear(res: ResolutionData, d: int) -> bool:
    return x0_linear_witness(res, d) is not None


def _first_solution(Ns: list[int], d: int):
    def dfs(pos, remaining):
        if pos == len(Ns) - 1:
            if remaining >= Ns[pos] and remaining % Ns[pos] == 0:
                return (remaining // Ns[pos],)
            return None
        rest_min = sum(Ns[pos + 1:])
        for a in range(1, (remaining - rest_min) // Ns[pos] + 1):
            tail = dfs(pos + 1, remaining - a * Ns[pos])
            if tail is not None:
                return (a,) + tail
        return None

    return dfs(0, d)


def blowup(res: ResolutionData, J: Iterable[int]) -> ResolutionData:
    """Formal blow-up with center ``E_J``.

    The exceptional divisor gets id 0 (or the next free id when 0 is taken),
    ``N_0 = sum N_j`` and ``xi_0 = sum xi_j``.  Strata not containing ``J``
    survive unchanged; for every ``K`` with ``J\\K`` nonempty and
    ``E_{J u K}^o`` listed, the new stratum ``K u {0}`` carries
    ``(L-1)^(|J\\K|-1)`` times the classes of ``E_{J u K}^o``.
    """
    J = tuple(sorted(set(J)))
    if len(J) < 2:
        raise CenterTooSmall(f"center {set(J)} must contain at least two divisors")
    unknown = [j for j in J if j not in res.ids]
    if unknown:
        raise DatasetError(f"center {set(J)} names unknown divisors {unknown}")
    if res.stratum(J) is None:
        raise EmptyCenter(f"E_J^o for J = {set(J)} is not listed")
    diags = validate(res)
    if diags:
        raise DatasetError(f"cannot blow up invalid resolution {res.name!r}", diags)

    new_id = 0 if 0 not in res.ids else max(res.ids) + 1
    N0 = sum(res.N(j) for j in J)
    xi0 = sum(res.xi(j) for j in J)
    divisors = res.divisors + (Divisor(new_id, N0, xi0),)
    Jset = set(J)
    lm1 = LaurentPoly.parse("L - 1")

    strata = [s for s in res.strata if not Jset <= set(s.J)]
    for big in res.strata:
        if not Jset <= set(big.J):
            continue
        outside = tuple(i for i in big.J if i not in Jset)
        for r in range(len(J)):
            for inside in itertools.combinations(J, r):
                K = tuple(sorted(outside + inside))
                factor = lm1 ** (len(J) - r - 1)
                new_J = tuple(sorted(K + (new_id,)))
                strata.append(Stratum(
                    new_J,
                    big.eq_class.scale(factor),
                    None if big.naive_class is None else big.naive_class.scale(factor),
                    None if big.chi is None else big.chi * (0 if len(J) - r - 1 else 1),
                    None if big.count_poly is None else big.count_poly * factor,
                    None if big.eq_count_poly is None else big.eq_count_poly * factor,
                ))
    out = ResolutionData(f"{res.name}+bl{{{','.join(map(str, J))}}}", res.m, divisors, tuple(strata))

    for s in out.strata:
        if new_id in s.J:
            K = tuple(i for i in s.J if i != new_id)
            m_old = stratum_gcd(res, tuple(sorted(set(K) | Jset)))
            m_new = stratum_gcd(out, s.J)
            assert m_new % m_old == 0, f"m_(J u K) = {m_old} does not divide m_(K u 0) = {m_new}"
            assert not Jset <= set(K)
        else:
            assert not Jset <= set(s.J)
    return out


def reduced_fiber_class(res: ResolutionData) -> GrElement:
    """Class of the reduced special fiber, the disjoint union of the ``E_J^o``."""
    total = GrElement()
    for s in res.strata:
        if s.naive_class is None:
            raise IncompleteData(f"stratum {set(s.J)} has no naive class")
        total = total + s.naive_class
    return total


# -- JSON ---------------------------------------------------------------------

_TOP_KEYS = {"name", "m", "divisors", "strata"}
_DIV_KEYS = {"id", "N", "xi"}
_STRATUM_KEYS = {"J", "eq_class", "naive_class", "chi", "count_poly", "eq_count_poly"}


def _check_keys(obj, allowed, required, where):
    if not isinstance(obj, Mapping):
        raise DatasetError(f"{where}: expected an object")
    unknown = set(obj) - allowed
    if unknown:
        raise DatasetError(f"{where}: unknown keys {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        raise DatasetError(f"{where}: missing keys {sorted(missing)}")


def _int(value, where):
    if not isinstance(value, int) or isinstance(value, bool):
        raise DatasetError(f"{where}: expected an integer, got {value!r}")
    return value


def resolution_from_dict(data: Mapping, *, check: bool = True) -> ResolutionData:
    _check_keys(data, _TOP_KEYS, _TOP_KEYS, "dataset")
    divisors = []
    for k, d in enumerate(data["divisors"]):
        where = f"divisors[{k}]"
        _check_keys(d, _DIV_KEYS, _DIV_KEYS, where)
        divisors.append(Divisor(_int(d["id"], where), _int(d["N"], where), _int(d["xi"], where)))
    strata = []
    for k, s in enumerate(data["strata"]):
        where = f"strata[{k}]"
        _check_keys(s, _STRATUM_KEYS, {"J", "eq_class"}, where)
        try:
            strata.append(Stratum(
                tuple(_int(i, where) for i in s["J"]),
                GrElement.parse(s["eq_class"]),
                GrElement.parse(s["naive_class"]) if s.get("naive_class") is not None else None,
                _int(s["chi"], where) if s.get("chi") is not None else None,
                LaurentPoly.parse(s["count_poly"]) if s.get("count_poly") is not None else None,
                LaurentPoly.parse(s["eq_count_poly"]) if s.get("eq_count_poly") is not None else None,
            ))
        except ParseError as exc:
            raise DatasetError(f"{where}: {exc}") from None
    res = ResolutionData(str(data["name"]), _int(data["m"], "m"), tuple(divisors), tuple(strata))
    if check:
        diags = validate(res)
        if diags:
            raise DatasetError(f"dataset {res.name!r} is invalid", diags)
    return res


def resolution_to_dict(res: ResolutionData) -> dict:
    strata = []
    for s in res.strata:
        entry = {"J": list(s.J), "eq_class": str(s.eq_class)}
        if s.naive_class is not None:
            entry["naive_class"] = str(s.naive_class)
        if s.chi is not None:
            entry["chi"] = s.chi
        if s.count_poly is not None:
            entry["count_poly"] = str(s.count_poly)
        if s.eq_count_poly is not None:
            entry["eq_count_poly"] = str(s.eq_count_poly)
        strata.append(entry)
    return {
        "name": res.name,
        "m": res.m,
        "divisors": [{"id": d.id, "N": d.N, "xi": d.xi} for d in res.divisors],
        "strata": strata,
    }


def load_resolution(source) -> ResolutionData:
    """Load a dataset from a path, a bundled name (``"cusp"``) or a dict."""
    if isinstance(source, Mapping):
        return resolution_from_dict(source)
    text = str(source)
    path = Path(text)
    name = text[:-5] if text.endswith(".json") else text
    if not path.exists() and name in BUNDLED:
        raw = resources.files("motzeta.data").joinpath(f"{name}.json").read_text()
    else:
        try:
            raw = path.read_text()
        except OSError as exc:
            raise DatasetError(f"cannot read {text}: {exc}") from None
    try:
        data = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise DatasetError(f"{text}: not valid JSON ({exc})") from None
    return resolution_from_dict(data)


def bundled(name: str) -> ResolutionData:
    if name not in BUNDLED:
        raise KeyError(f"no bundled dataset {name!r}; choose from {BUNDLED}")
    return load_resolution(name)


def with_strata(res: ResolutionData, strata) -> ResolutionData:
    return replace(res, strata=tuple(strata))
