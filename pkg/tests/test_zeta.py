from fractions import Fraction

import pytest
import sympy as sp

from motzeta import (
    GrElement,
    RationalSeries,
    StratumSymbol,
    blowup,
    bundled,
    compare_weil_zeta,
    local_singular_series,
    motivic_volume,
    nearby_cycles,
    rs_equal,
    serre_invariant,
    serre_series,
    volume_series,
    zeta_equivariant,
    zeta_naive,
)
from motzeta.checks import mu_matrix, run_checks
from motzeta.errors import IncompleteData
from motzeta.grring import gr_reduce
from motzeta.laurent import L
from motzeta.resolution import BUNDLED, Divisor, ResolutionData, Stratum
from motzeta.zeta import (
    forget_series,
    gelfand_leray_orders,
    inclusion_exclusion,
    integrate_gauge,
    specialize_topological,
)
from oracle import gr_to_sympy, oracle_volume, oracle_zeta, same_function, series_to_sympy, taylor


def eq(J, m=1):
    return StratumSymbol.equivariant(J, m)


def el(sym, c=1):
    return GrElement.from_symbol(sym, c)


def two_divisor_data(m=0):
    """Divisors with N = (2, 3), meeting in one stratum (labels divide the gcds)."""
    return ResolutionData("n23", m, (Divisor(1, 2, 1), Divisor(2, 3, 1)), (
        Stratum((1,), el(eq([1], 2))),
        Stratum((2,), el(eq([2], 3))),
        Stratum((1, 2), el(eq([1, 2], 1))),
    ))


@pytest.mark.parametrize("name", BUNDLED)
def test_zeta_matches_sympy_oracle(name):
    res = bundled(name)
    assert same_function(series_to_sympy(zeta_equivariant(res)), oracle_zeta(res))
    assert same_function(series_to_sympy(zeta_naive(res)), oracle_zeta(res, naive=True))


@pytest.mark.parametrize("name", BUNDLED)
def test_expansion_matches_sympy_taylor(name):
    res = bundled(name)
    coeffs = zeta_equivariant(res).expand(8)
    ref = taylor(oracle_zeta(res), 8)
    assert all(sp.expand(gr_to_sympy(c) - r) == 0 for c, r in zip(coeffs, ref))


def test_smooth_expansion(smooth):
    s = eq([1])
    assert zeta_equivariant(smooth).expand(3) == [GrElement()] + [el(s, L ** -k) for k in (1, 2, 3)]


def test_xy_first_coefficient(xy):
    assert zeta_equivariant(xy).expand(1)[1] == GrElement({eq([1]): L ** -1, eq([2]): L ** -1})


def test_xsq_coefficient(xsq):
    coeffs = zeta_equivariant(xsq).expand(4)
    assert coeffs[1].is_zero()
    assert coeffs[2] == el(eq([1], 2), L ** -1)
    assert coeffs[2].scale(L ** 4) == el(eq([1], 2), L ** 3)


def test_naive_xy_point_count(xy):
    c1 = zeta_naive(xy).expand(1)[1]
    for q in (3, 5, 7):
        value = gr_to_sympy(c1).subs("L", q)
        assert value == sp.Rational(2 * (q - 1) ** 2, q)
        assert value * q ** 2 == 2 * q * (q - 1) ** 2


@pytest.mark.parametrize("name", BUNDLED)
def test_quotient_identity(name):
    res = bundled(name)
    rhs = forget_series(zeta_equivariant(res), res.quotient_map()).scale(L - 1)
    assert rs_equal(zeta_naive(res), rhs)


def test_zeta_naive_needs_classes(xy):
    res = ResolutionData("bare", 1, xy.divisors, tuple(Stratum(s.J, s.eq_class) for s in xy.strata))
    with pytest.raises(IncompleteData):
        zeta_naive(res)


@pytest.mark.parametrize("name", BUNDLED)
@pytest.mark.parametrize("label", ["xi-N", "zero", "xi", "N"])
def test_volume_series_matches_oracle_and_per_degree(name, label):
    res = bundled(name)
    mu = mu_matrix(res)[label]
    S = volume_series(res, mu)
    assert same_function(series_to_sympy(S), oracle_volume(res, mu))
    coeffs = S.expand(12)
    assert all(coeffs[d] == local_singular_series(res, mu, d) for d in range(1, 13))


def test_volume_examples(smooth, xy):
    assert rs_equal(volume_series(smooth, {1: 0}),
                    RationalSeries.generator(0, 1) * el(eq([1]), L ** -1))
    with pytest.raises(IncompleteData):
        volume_series(xy, {1: 0})


def test_local_singular_series_examples():
    res = two_divisor_data()
    mu = {1: 0, 2: 0}
    assert local_singular_series(res, mu, 6) == el(eq([1], 2)) + el(eq([2], 3))
    assert local_singular_series(res, mu, 5) == el(eq([1, 2]), L - 1)
    assert local_singular_series(res, mu, 1).is_zero()


@pytest.mark.parametrize("name", BUNDLED)
def test_comparison_identity(name):
    res = bundled(name)
    assert compare_weil_zeta(res)
    lhs = volume_series(res, gelfand_leray_orders(res))
    rhs = zeta_equivariant(res).substitute_scaled(1).scale(L ** -res.m)
    assert rs_equal(lhs, rhs)


def test_serre_examples(cusp, smooth, xy):
    s = {i: eq([i], cusp.N(i)) for i in cusp.ids}
    assert serre_invariant(cusp, 4) == el(s[1]) + el(s[4])
    assert serre_invariant(cusp, 5) == el(s[4])
    assert serre_invariant(cusp, 6) == sum((el(x) for x in s.values()), GrElement())
    assert rs_equal(serre_series(smooth), RationalSeries.generator(0, 1) * el(eq([1])))
    assert rs_equal(serre_series(xy), RationalSeries.generator(0, 1) * (el(eq([1])) + el(eq([2]))))


@pytest.mark.parametrize("name", BUNDLED)
def test_serre_consistency(name):
    res = bundled(name)
    coeffs = serre_series(res).expand(12)
    mu = gelfand_leray_orders(res)
    for d in range(1, 13):
        via_volume = gr_reduce(local_singular_series(res, mu, d).scale(L ** res.m), "L-1")
        assert serre_invariant(res, d) == coeffs[d] == via_volume


def test_nearby_cycles_examples(smooth, cusp, xy):
    assert nearby_cycles(smooth) == el(eq([1]))
    pairs = sum((el(eq(J, m), 1 - L) for J, m in (([1, 3], 2), ([2, 3], 3), ([3, 4], 1))), GrElement())
    singles = sum((el(eq([i], cusp.N(i))) for i in cusp.ids), GrElement())
    assert nearby_cycles(cusp) == singles + pairs
    assert (-zeta_equivariant(xy)).limit_T_infinity() == el(eq([1])) + el(eq([2])) - el(eq([1, 2]), L - 1)


@pytest.mark.parametrize("name", BUNDLED)
def test_nearby_cycles_matches_sympy_limit(name):
    res = bundled(name)
    ref = sp.limit(sp.together(-oracle_zeta(res)), sp.Symbol("T"), sp.oo)
    assert sp.cancel(gr_to_sympy(nearby_cycles(res)) - ref) == 0


@pytest.mark.parametrize("name", BUNDLED)
def test_motivic_volume_relation(name):
    res = bundled(name)
    assert motivic_volume(res).scale(L ** res.m) == nearby_cycles(res)


@pytest.mark.parametrize(("name", "center"), [("xy", (1, 2)), ("cusp", (1, 3)), ("cusp", (2, 3)), ("cusp", (3, 4))])
def test_blowup_invariance(name, center):
    res = bundled(name)
    b = blowup(res, center)
    assert rs_equal(zeta_equivariant(res), zeta_equivariant(b))
    assert rs_equal(zeta_naive(res), zeta_naive(b))
    assert nearby_cycles(res) == nearby_cycles(b)
    assert same_function(oracle_zeta(res), oracle_zeta(b))


def test_inclusion_exclusion():
    a, b, c = (el(eq([i])) for i in (1, 2, 3))
    one, two = frozenset({1}), frozenset({2})
    assert inclusion_exclusion({one: a}) == a
    assert inclusion_exclusion({one: a, two: b, one | two: c}) == a + b - c
    v = el(eq([4]), L)
    subsets = [frozenset(s) for s in ({1}, {2}, {3}, {1, 2}, {1, 3}, {2, 3}, {1, 2, 3})]
    assert inclusion_exclusion({s: v for s in subsets}) == v


def test_integrate_gauge():
    c1, c2 = el(eq([1])), el(eq([2]))
    assert integrate_gauge([(c1, 0)], 1) == c1.scale(L ** -1)
    total = integrate_gauge([(c1, 2), (c2, -1)], 0)
    assert total == c1.scale(L ** -2) + c2.scale(L)
    assert gr_reduce(total, "L-1") == c1 + c2


def test_topological_zeta(cusp, smooth):
    top = specialize_topological(smooth)
    assert top(Fraction(1, 2)) == Fraction(2, 3)
    top = specialize_topological(cusp)
    assert top.candidate_poles == (-1, -1, Fraction(-5, 6), -1)
    expected = sum(Fraction(s.chi) / sp.prod([cusp.xi(i) for i in s.J]) for s in cusp.strata)
    assert top(0) == expected == 1


@pytest.mark.parametrize("name", BUNDLED)
def test_full_check_suite(name):
    results = run_checks(bundled(name), 12)
    assert all(r.passed for r in results), [str(r) for r in results if not r.passed]


def test_check_suite_reports_counterexample(xy, monkeypatch):
    import motzeta.checks as checks

    def bad_blowup(res, J):
        out = blowup(res, J)
        strata = tuple(Stratum(s.J, s.eq_class.scale(2), s.naive_class, s.chi) if s.J == (0,) else s
                       for s in out.strata)
        return ResolutionData(out.name, out.m, out.divisors, strata)

    monkeypatch.setattr(checks, "blowup", bad_blowup)
    failed = [r for r in run_checks(xy, 6) if not r.passed]
    assert failed
    assert any(r.detail.startswith("center {1,2}: first differing coefficient at T^2") for r in failed)


def test_check_suite_flags_unreadable_quotients(xy):
    broken = ResolutionData("broken", 1, xy.divisors, tuple(
        Stratum(s.J, s.eq_class.scale(2) if s.J == (1, 2) else s.eq_class, s.naive_class, s.chi)
        for s in xy.strata))
    failed = {r.name for r in run_checks(broken, 6) if not r.passed}
    assert failed == {"quotient identity"}

