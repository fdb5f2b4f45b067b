"""Brute-force jet counting over prime fields.

Everything here is exhaustive: a jet ``psi in (F_q[t]/t^(n+1))^k`` is a
vector of ``k(n+1)`` digits in base ``q``, jets are enumerated by flat
index in contiguous blocks (the leading digits are the coefficients of the
first variable, so a block range partitions the jet space by that
variable), and polynomials are evaluated on whole blocks with numpy.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .errors import IncompleteData, InvalidField, NotSmooth, TooLarge
from .grring import GrElement, StratumSymbol, gr_specialize
from .polynomial import Polynomial

DEFAULT_GUARD = 10 ** 8
BLOCK = 1 << 17


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    return all(q % p for p in range(2, math.isqrt(q) + 1))


def _check_field(q: int) -> None:
    if not isinstance(q, int) or not is_prime(q):
        raise InvalidField(f"q = {q!r} is not a prime")


# -- scalar reference types ---------------------------------------------------


@dataclass(frozen=True)
class PrimeFieldElement:
    residue: int
    q: int

    def __post_init__(self):
        object.__setattr__(self, "residue", self.residue % self.q)

    def _other(self, o):
        if isinstance(o, PrimeFieldElement):
            if o.q != self.q:
                raise ValueError("elements of different fields")
            return o.residue
        return int(o)

    def __add__(self, o):
        return PrimeFieldElement(self.residue + self._other(o), self.q)

    __radd__ = __add__

    def __sub__(self, o):
        return PrimeFieldElement(self.residue - self._other(o), self.q)

    def __neg__(self):
        return PrimeFieldElement(-self.residue, self.q)

    def __mul__(self, o):
        return PrimeFieldElement(self.residue * self._other(o), self.q)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        return PrimeFieldElement(pow(self.residue, k, self.q), self.q)

    def inverse(self):
        if self.residue == 0:
            raise ZeroDivisionError("0 has no inverse")
        return PrimeFieldElement(pow(self.residue, self.q - 2, self.q), self.q)

    def __truediv__(self, o):
        return self * PrimeFieldElement(self._other(o), self.q).inverse()

    def __bool__(self):
        return self.residue != 0


@dataclass(frozen=True)
class TruncatedPoly:
    """Element of ``F_q[t]/(t^(n+1))``."""

    coefficients: tuple[int, ...]
    q: int

    def __post_init__(self):
        object.__setattr__(self, "coefficients", tuple(int(c) % self.q for c in self.coefficients))

    @property
    def n(self) -> int:
        return len(self.coefficients) - 1

    @classmethod
    def const(cls, c: int, n: int, q: int) -> "TruncatedPoly":
        return cls((c,) + (0,) * n, q)

    def ord(self) -> int:
        for k, c in enumerate(self.coefficients):
            if c:
                return k
        return self.n + 1

    def __add__(self, o):
        return TruncatedPoly(tuple(a + b for a, b in zip(self.coefficients, o.coefficients)), self.q)

    def __mul__(self, o):
        if isinstance(o, int):
            return TruncatedPoly(tuple(c * o for c in self.coefficients), self.q)
        n = self.n
        out = [0] * (n + 1)
        for i, a in enumerate(self.coefficients):
            if a:
                for j in range(n + 1 - i):
                    out[i + j] += a * o.coefficients[j]
        return TruncatedPoly(tuple(out), self.q)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        out = TruncatedPoly.const(1, self.n, self.q)
        for _ in range(k):
            out = out * self
        return out


def evaluate_scalar(f: Polynomial, jets: Sequence[TruncatedPoly]) -> TruncatedPoly:
    """Reference evaluation of ``f`` at one jet, term by term."""
    n, q = jets[0].n, jets[0].q
    total = TruncatedPoly.const(0, n, q)
    for exps, c in f.terms:
        term = TruncatedPoly.const(c, n, q)
        for x, k in zip(jets, exps):
            term = term * (x ** k)
        total = total + term
    return total


# -- vectorized enumeration ---------------------------------------------------


def _digits(start: int, stop: int, q: int, width: int) -> np.ndarray:
    idx = np.arange(start, stop, dtype=np.int64)
    out = np.empty((stop - start, width), dtype=np.int64)
    for k in range(width - 1, -1, -1):
        idx, out[:, k] = np.divmod(idx, q)
    return out


def _encode(digits: np.ndarray, q: int) -> np.ndarray:
    idx = np.zeros(digits.shape[0], dtype=np.int64)
    for k in range(digits.shape[1]):
        idx = idx * q + digits[:, k]
    return idx


def _tmul(a: np.ndarray, b: np.ndarray, q: int) -> np.ndarray:
    n1 = a.shape[1]
    out = np.zeros_like(a)
    for i in range(n1):
        ai = a[:, i:i + 1]
        out[:, i:] += ai * b[:, :n1 - i]
    return out % q


def eval_block(f: Polynomial, xs: list[np.ndarray], q: int) -> np.ndarray:
    """Evaluate ``f`` on a block of jets; ``xs[i]`` has shape (B, n+1)."""
    B, n1 = xs[0].shape
    powers: dict[tuple[int, int], np.ndarray] = {}

    def power(v, k):
        if (v, k) not in powers:
            if k == 1:
                powers[(v, k)] = xs[v]
            else:
                powers[(v, k)] = _tmul(power(v, k - 1), xs[v], q)
        return powers[(v, k)]

    total = np.zeros((B, n1), dtype=np.int64)
    for exps, c in f.terms:
        term = None
        for v, k in enumerate(exps):
            if k:
                term = power(v, k) if term is None else _tmul(term, power(v, k), q)
        if term is None:
            term = np.zeros((B, n1), dtype=np.int64)
            term[:, 0] = 1
        total = (total + (c % q) * term) % q
    return total


def _orders(values: np.ndarray) -> np.ndarray:
    nz = values != 0
    return np.where(nz.any(axis=1), nz.argmax(axis=1), values.shape[1])


def _split(xdigits: np.ndarray, n_vars: int, n1: int) -> list[np.ndarray]:
    return [xdigits[:, v * n1:(v + 1) * n1] for v in range(n_vars)]


def _guard(total: int, guard: int) -> None:
    if total > guard:
        raise TooLarge(f"{total} jets exceed the enumeration guard {guard}")


def _blocks(total: int, block: int):
    return [(s, min(total, s + block)) for s in range(0, total, block)]


def _contact_block(args):
    f, q, d, start, stop = args
    n1 = d + 1
    digits = _digits(start, stop, q, f.n_vars * n1)
    vals = eval_block(f, _split(digits, f.n_vars, n1), q)
    ords = _orders(vals)
    hist = np.bincount(ords, minlength=n1 + 1)
    is_d = ords == d
    xd1 = int(np.count_nonzero(is_d & (vals[:, d] == 1))) if d < n1 else 0
    return hist, xd1


def _run(fn, tasks, workers: int):
    if workers <= 1 or len(tasks) == 1:
        return [fn(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, tasks))


@dataclass(frozen=True)
class JetCounts:
    q: int
    d: int
    count_Xd: int
    count_Xd1: int
    per_ord: Mapping[int, int] = field(default_factory=dict)
    n_vars: int = 0

    @property
    def censored(self) -> int:
        """Jets with ``f(psi) = 0 mod t^(d+1)``."""
        return self.per_ord.get(self.d + 1, 0)


def _as_poly(f, n_vars=None) -> Polynomial:
    return f if isinstance(f, Polynomial) else Polynomial.parse(f, n_vars)


def count_contact_loci(f, q: int, d: int, *, n_vars: int | None = None, guard: int = DEFAULT_GUARD,
                       block: int = BLOCK, workers: int = 1) -> JetCounts:
    """Count ``X_d`` (``ord_t f(psi) = d``) and ``X_{d,1}`` (``f(psi) = t^d mod t^(d+1)``)."""
    _check_field(q)
    if d < 1:
        raise ValueError("d must be positive")
    f = _as_poly(f, n_vars)
    total = q ** (f.n_vars * (d + 1))
    _guard(total, guard)
    tasks = [(f, q, d, s, e) for s, e in _blocks(total, block)]
    hist = np.zeros(d + 2, dtype=np.int64)
    xd1 = 0
    for h, c in _run(_contact_block, tasks, workers):
        hist += h
        xd1 += c
    per_ord = {k: int(v) for k, v in enumerate(hist) if v}
    return JetCounts(q, d, int(hist[d]), xd1, per_ord, f.n_vars)


def _xd1_members(f: Polynomial, q: int, d: int, block: int) -> np.ndarray:
    n1 = d + 1
    found = []
    for s, e in _blocks(q ** (f.n_vars * n1), block):
        digits = _digits(s, e, q, f.n_vars * n1)
        vals = eval_block(f, _split(digits, f.n_vars, n1), q)
        hit = (_orders(vals) == d) & (vals[:, d] == 1)
        found.append(np.arange(s, e, dtype=np.int64)[hit])
    return np.concatenate(found) if found else np.zeros(0, dtype=np.int64)


@dataclass(frozen=True)
class MuActionReport:
    q: int
    d: int
    roots: tuple[int, ...]
    permutes: Mapping[int, bool]
    count_Xd: int
    count_Xd1: int
    coprime: bool
    relation_holds: bool | None

    @property
    def ok(self) -> bool:
        return all(self.permutes.values()) and self.relation_holds is not False


def mu_action_check(f, q: int, d: int, *, n_vars: int | None = None, guard: int = DEFAULT_GUARD,
                    block: int = BLOCK) -> MuActionReport:
    """Check that ``psi(t) -> psi(xi t)`` permutes ``X_{d,1}`` for every ``xi^d = 1`` in ``F_q``.

    When ``gcd(d, q-1) = 1`` the map ``(psi, a) -> psi(a t)`` is a bijection
    ``X_{d,1} x G_m -> X_d`` on rational points, so the counts must satisfy
    ``#X_d = (q-1) #X_{d,1}``.
    """
    _check_field(q)
    f = _as_poly(f, n_vars)
    counts = count_contact_loci(f, q, d, guard=guard, block=block)
    members = np.sort(_xd1_members(f, q, d, block))
    n1 = d + 1
    roots = tuple(x for x in range(1, q) if pow(x, d, q) == 1)
    permutes = {}
    for xi in roots:
        if not len(members):
            permutes[xi] = True
            continue
        image = _act(members, xi, q, f.n_vars, n1)
        permutes[xi] = bool(np.array_equal(np.sort(image), members))
    coprime = math.gcd(d, q - 1) == 1
    relation = (counts.count_Xd == (q - 1) * counts.count_Xd1) if coprime else None
    return MuActionReport(q, d, roots, permutes, counts.count_Xd, counts.count_Xd1, coprime, relation)


def _act(indices: np.ndarray, xi: int, q: int, n_vars: int, n1: int) -> np.ndarray:
    width = n_vars * n1
    digits = np.empty((len(indices), width), dtype=np.int64)
    idx = indices.copy()
    for k in range(width - 1, -1, -1):
        idx, digits[:, k] = np.divmod(idx, q)
    scale = np.array([pow(xi, k % n1, q) for k in range(width)], dtype=np.int64)
    return _encode((digits * scale) % q, q)


# -- Greenberg truncation -----------------------------------------------------


@dataclass(frozen=True)
class GreenbergReport:
    q: int
    n_vars: int
    rank: int
    counts: tuple[int, ...]

    @property
    def ratios(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(b, a) if a else Fraction(0) for a, b in zip(self.counts, self.counts[1:]))

    @property
    def ok(self) -> bool:
        return all(r == self.q ** self.rank for r in self.ratios)


def count_greenberg(g, n_vars: int, q: int, n: int, *, guard: int = DEFAULT_GUARD,
                    block: int = BLOCK) -> GreenbergReport:
    """Count jets of ``{g = 0}`` at levels ``0..n``; ``g=None`` means affine space."""
    _check_field(q)
    if g is None or (isinstance(g, str) and not g.strip()):
        counts = tuple(q ** (n_vars * (j + 1)) for j in range(n + 1))
        return GreenbergReport(q, n_vars, n_vars, counts)
    g = _as_poly(g, n_vars)
    if g.n_vars != n_vars:
        raise ValueError("polynomial and n_vars disagree")
    _guard(q ** (n_vars * (n + 1)), guard)
    grads = [g.derivative(v) for v in range(n_vars)]
    counts = []
    for j in range(n + 1):
        n1 = j + 1
        hits = 0
        for s, e in _blocks(q ** (n_vars * n1), block):
            digits = _digits(s, e, q, n_vars * n1)
            vals = eval_block(g, _split(digits, n_vars, n1), q)
            sol = ~vals.any(axis=1)
            hits += int(np.count_nonzero(sol))
            if j == 0 and sol.any():
                pts = digits[sol]
                gvals = np.stack([eval_block(gr, _split(pts, n_vars, 1), q)[:, 0] for gr in grads], axis=1)
                singular = ~gvals.any(axis=1)
                if singular.any():
                    raise NotSmooth(f"{g} is singular at the F_{q}-point {tuple(int(x) for x in pts[singular][0])}")
        counts.append(hits)
    return GreenbergReport(q, n_vars, n_vars - 1, tuple(counts))


# -- order of the Jacobian ----------------------------------------------------


@dataclass(frozen=True)
class OrdJacStratum:
    e: int
    source_jets: int
    images: int
    fiber_sizes: tuple[int, ...]
    closed: bool  # every preimage of an image lies in the same stratum
    expected_fiber: int

    @property
    def ok(self) -> bool:
        return (self.fiber_sizes == (self.expected_fiber,) and self.closed
                and self.source_jets == self.expected_fiber * self.images)


@dataclass(frozen=True)
class OrdJacReport:
    q: int
    n: int
    strata: tuple[OrdJacStratum, ...]
    ambiguous: Mapping[int, int]
    censored: int

    @property
    def ok(self) -> bool:
        return all(s.ok for s in self.strata)

    def stratum(self, e: int) -> OrdJacStratum | None:
        for s in self.strata:
            if s.e == e:
                return s
        return None


def jacobian_determinant(h: Sequence[Polynomial]) -> Polynomial:
    h1, h2 = h
    return h1.derivative(0) * h2.derivative(1) - h1.derivative(1) * h2.derivative(0)


def ordjac_counts(h, q: int, n: int, *, guard: int = DEFAULT_GUARD, block: int = BLOCK) -> OrdJacReport:
    """Stratify level-``n`` jets of the plane by ``ord_t Jac_h`` and measure fibers of ``h``.

    Only strata with ``e <= n/2`` are verified; larger orders are reported in
    ``ambiguous`` and jets with ``Jac_h = 0 mod t^(n+1)`` in ``censored``.
    """
    _check_field(q)
    h = tuple(_as_poly(p, 2) for p in h)
    if len(h) != 2 or any(p.n_vars != 2 for p in h):
        raise ValueError("h must be a pair of polynomials in two variables")
    jac = jacobian_determinant(h)
    if jac.is_zero():
        raise ValueError("the Jacobian determinant of h vanishes identically")
    n1 = n + 1
    total = q ** (2 * n1)
    _guard(total, guard)
    orders = np.empty(total, dtype=np.int64)
    images = np.empty(total, dtype=np.int64)
    for s, e in _blocks(total, block):
        digits = _digits(s, e, q, 2 * n1)
        xs = _split(digits, 2, n1)
        orders[s:e] = _orders(eval_block(jac, xs, q))
        img = np.concatenate([eval_block(p, xs, q) for p in h], axis=1)
        images[s:e] = _encode(img, q)
    all_imgs, all_counts = np.unique(images, return_counts=True)
    full_fiber = dict(zip(all_imgs.tolist(), all_counts.tolist()))
    strata = []
    ambiguous = {}
    for e in sorted(set(orders.tolist())):
        if e == n1:
            continue
        mask = orders == e
        if 2 * e > n:
            ambiguous[e] = int(mask.sum())
            continue
        imgs, counts = np.unique(images[mask], return_counts=True)
        closed = all(full_fiber[i] == c for i, c in zip(imgs.tolist(), counts.tolist()))
        strata.append(OrdJacStratum(e, int(mask.sum()), len(imgs), tuple(sorted(set(counts.tolist()))), closed, q ** e))
    return OrdJacReport(q, n, tuple(strata), ambiguous, int((orders == n1).sum()))


# -- cross-check against the symbolic series ---------------------------------


@dataclass(frozen=True)
class CrosscheckRow:
    d: int
    count_Xd: int
    expected_Xd: Fraction
    count_Xd1: int
    expected_Xd1: Fraction | None

    @property
    def naive_ok(self) -> bool:
        return self.count_Xd == self.expected_Xd

    @property
    def equivariant_ok(self) -> bool | None:
        return None if self.expected_Xd1 is None else self.count_Xd1 == self.expected_Xd1


@dataclass(frozen=True)
class CrosscheckReport:
    q: int
    rows: tuple[CrosscheckRow, ...]
    skipped_equivariant: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return all(r.naive_ok and r.equivariant_ok is not False for r in self.rows)

    def first_failure(self) -> CrosscheckRow | None:
        for r in self.rows:
            if not r.naive_ok or r.equivariant_ok is False:
                return r
        return None


def point_count_assignment(res, q: int, overrides: Mapping[StratumSymbol, object] | None = None):
    """Symbol values at ``L = q`` read off the dataset's point counts.

    A class ``c * S`` with ``c`` a monomial determines ``S`` from the count of
    its stratum.  Equivariant symbols use ``eq_count_poly`` or, when the
    stratum has ``m_J = 1`` (so the cover is trivial), the naive count.
    """
    from .resolution import stratum_gcd

    values: dict[StratumSymbol, Fraction] = {}

    def assign(cls: GrElement | None, count: Fraction | None):
        if cls is None or count is None or len(cls) != 1:
            return
        ((sym, c),) = cls.items()
        if sym.is_unit or not c.is_monomial():
            return
        values.setdefault(sym, count / c.evaluate(q))

    for s in res.strata:
        naive_count = None
        if s.count_poly is not None:
            naive_count = s.count_poly.evaluate(q)
        elif s.naive_class is not None and all(x.is_unit for x in s.naive_class.symbols()):
            naive_count = gr_specialize(s.naive_class, q, {})
        assign(s.naive_class, naive_count)
        if s.eq_count_poly is not None:
            assign(s.eq_class, s.eq_count_poly.evaluate(q))
        elif stratum_gcd(res, s.J) == 1:
            assign(s.eq_class, naive_count)
    if overrides:
        values.update({k: Fraction(v) for k, v in overrides.items()})
    return values


def crosscheck_series(res, f, q: int, D: int, *, symbol_values: Mapping[StratumSymbol, object] | None = None,
                      guard: int = DEFAULT_GUARD, block: int = BLOCK, workers: int = 1) -> CrosscheckReport:
    """Compare jet counts with ``q^((m+1)d)`` times the specialized zeta coefficients."""
    from .zeta import zeta_equivariant, zeta_naive

    _check_field(q)
    f = _as_poly(f, res.m + 1)
    for d in range(1, D + 1):
        _guard(q ** (f.n_vars * (d + 1)), guard)
    values = point_count_assignment(res, q, symbol_values)
    Z = zeta_equivariant(res).expand(D)
    Zn = zeta_naive(res).expand(D)

    def at_q(c: GrElement):
        return gr_specialize(c, q, values)

    missing_naive = sorted({str(s) for c in Zn for s in c.symbols() if not s.is_unit and s not in values})
    if missing_naive:
        raise IncompleteData(f"no point counts for {', '.join(missing_naive)}")
    missing_eq = tuple(sorted({str(s) for c in Z for s in c.symbols() if not s.is_unit and s not in values}))

    rows = []
    for d in range(1, D + 1):
        counts = count_contact_loci(f, q, d, guard=guard, block=block, workers=workers)
        scale = Fraction(q) ** ((res.m + 1) * d)
        exp_naive = scale * at_q(Zn[d])
        exp_eq = None if missing_eq else scale * at_q(Z[d])
        rows.append(CrosscheckRow(d, counts.count_Xd, exp_naive, counts.count_Xd1, exp_eq))
    return CrosscheckReport(q, tuple(rows), missing_eq)
