"""The invariant suite run by ``motzeta check``.

Each check returns a :class:`CheckResult`; on failure ``detail`` names the
smallest counterexample found (center, degree, differing coefficients).
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import MissingQuotient
from .grring import gr_reduce
from .laurent import LaurentPoly
from .resolution import ResolutionData, blowup, is_X0_linear, reduced_fiber_class
from .series import RationalSeries
from .zeta import (
    compare_weil_zeta,
    contributing_strata,
    forget_series,
    gelfand_leray_orders,
    local_singular_series,
    nearby_cycles_closed_form,
    serre_invariant,
    serre_series,
    volume_series,
    zeta_equivariant,
    zeta_naive,
)

DEFAULT_ORDER = 12


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str = ""

    def __str__(self):
        status = "PASS" if self.passed else "FAIL"
        return f"{status} {self.name}" + (f": {self.detail}" if self.detail else "")


def first_difference(x: RationalSeries, y: RationalSeries, order: int):
    """Lowest degree ``d <= order`` where the expansions differ, or None."""
    for d, (a, b) in enumerate(zip(x.expand(order), y.expand(order))):
        if a != b:
            return d, a, b
    return None


def _series_check(name, x, y, order, where=""):
    if x.equals(y):
        return CheckResult(name, True, where.rstrip(": "))
    diff = first_difference(x, y, order)
    if diff is None:
        detail = f"{where}series differ beyond degree {order}"
    else:
        d, a, b = diff
        detail = f"{where}first differing coefficient at T^{d}: {a} != {b}"
    return CheckResult(name, False, detail)


def mu_matrix(res: ResolutionData) -> dict[str, dict[int, int]]:
    return {
        "xi-N": gelfand_leray_orders(res),
        "zero": {d.id: 0 for d in res.divisors},
        "xi": {d.id: d.xi for d in res.divisors},
        "N": {d.id: d.N for d in res.divisors},
    }


def has_naive(res: ResolutionData) -> bool:
    return all(s.naive_class is not None for s in res.strata)


def run_checks(res: ResolutionData, order: int = DEFAULT_ORDER) -> list[CheckResult]:
    results: list[CheckResult] = []
    Z = zeta_equivariant(res)
    naive = has_naive(res)
    Zn = zeta_naive(res) if naive else None
    S_f = nearby_cycles_closed_form(res)

    for J in res.eligible_centers():
        where = f"center {{{','.join(map(str, J))}}}: "
        b = blowup(res, J)
        results.append(_series_check("blowup-invariance zeta", Z, zeta_equivariant(b), order, where))
        if naive:
            results.append(_series_check("blowup-invariance naive zeta", Zn, zeta_naive(b), order, where))
            before = gr_reduce(reduced_fiber_class(res), "L")
            after = gr_reduce(reduced_fiber_class(b), "L")
            results.append(CheckResult("special-fiber mod L", before == after,
                                       where + (f"{before}" if before == after else f"{before} != {after}")))
        lim = (-zeta_equivariant(b)).limit_T_infinity()
        results.append(CheckResult("blowup-invariance nearby cycles", lim == S_f,
                                   where.rstrip(": ") if lim == S_f else where + f"{lim} != {S_f}"))

    if naive:
        try:
            rhs = forget_series(Z, res.quotient_map()).scale(LaurentPoly({1: 1, 0: -1}))
        except MissingQuotient as exc:
            results.append(CheckResult("quotient identity", False, str(exc)))
        else:
            results.append(_series_check("quotient identity", Zn, rhs, order))

    results.append(CheckResult("comparison identity", compare_weil_zeta(res)))

    lim = (-Z).limit_T_infinity()
    results.append(CheckResult("nearby cycles limit", lim == S_f, "" if lim == S_f else f"{lim} != {S_f}"))

    for label, mu in mu_matrix(res).items():
        coeffs = volume_series(res, mu).expand(order)
        bad = next((d for d in range(1, order + 1) if coeffs[d] != local_singular_series(res, mu, d)), None)
        results.append(CheckResult(f"series/per-degree mu={label}", bad is None,
                                   "" if bad is None else f"degree {bad}: {coeffs[bad]} != "
                                   f"{local_singular_series(res, mu, bad)}"))

    serre = serre_series(res).expand(order)
    mu = gelfand_leray_orders(res)
    bad = None
    for d in range(1, order + 1):
        inv = serre_invariant(res, d)
        from_F = gr_reduce(local_singular_series(res, mu, d).scale(LaurentPoly.L(res.m)), "L-1")
        if not (inv == from_F == serre[d]):
            bad = (d, inv, from_F, serre[d])
            break
    results.append(CheckResult("serre consistency", bad is None,
                               "" if bad is None else f"degree {bad[0]}: {bad[1]} / {bad[2]} / {bad[3]}"))

    bad = None
    for d in range(1, order + 1):
        multi = any(len(J) > 1 for J in contributing_strata(res, d))
        if multi != is_X0_linear(res, d):
            bad = d
            break
    results.append(CheckResult("X0-linearity consistency", bad is None, "" if bad is None else f"degree {bad}"))
    return results
