from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from motzeta import GrElement, LaurentPoly, StratumSymbol, gr_add, gr_forget, gr_reduce, gr_scale, gr_specialize
from motzeta.errors import MissingAssignment, MissingQuotient, NotReducible, ParseError
from motzeta.grring import UNIT, measure_cylinder
from motzeta.laurent import L

s1 = StratumSymbol.equivariant([1], 1)
s2 = StratumSymbol.equivariant([2], 1)
s12 = StratumSymbol.equivariant([1, 2], 1)
n1 = StratumSymbol.naive([1])
n12 = StratumSymbol.naive([1, 2])

symbols = st.sampled_from([UNIT, s1, s2, s12, n1, n12, StratumSymbol.equivariant([3], 6, "F")])
laurents = st.dictionaries(st.integers(-4, 4), st.integers(-9, 9), max_size=4).map(LaurentPoly)
elements = st.dictionaries(symbols, laurents, max_size=4).map(GrElement)


def el(sym, coeff=1):
    return GrElement.from_symbol(sym, coeff)


@given(elements, elements, elements)
def test_module_axioms(a, b, c):
    assert a + b == b + a
    assert (a + b) + c == a + (b + c)
    assert a + GrElement() == a
    assert a - a == GrElement()


@given(laurents, laurents, elements, elements)
def test_scalar_action(c, d, a, b):
    assert gr_scale(c, a + b) == gr_scale(c, a) + gr_scale(c, b)
    assert gr_scale(c * d, a) == gr_scale(c, gr_scale(d, a))
    assert gr_scale(c + d, a) == gr_scale(c, a) + gr_scale(d, a)


@given(elements)
def test_round_trip(a):
    assert GrElement.parse(str(a)) == a
    assert hash(GrElement.parse(str(a))) == hash(a)


def test_add_examples():
    assert gr_add(el(s1), el(s1)) == el(s1, 2)
    assert gr_add(el(s1, L - 1), GrElement()) == el(s1, L - 1)
    assert gr_add(el(s1, L - 1), el(s1, 1 - L)).is_zero()


def test_scale_examples():
    assert gr_scale(L, el(s1, L ** -1)) == el(s1)
    assert gr_scale(0, el(s1) + el(s12)).is_zero()
    assert gr_scale(L - 1, el(s12)) == el(s12, L - 1)


def test_printing():
    assert str(el(s1, 2)) == "2*E~{1}[m=1]"
    assert str(el(s1)) == "E~{1}[m=1]"
    assert str(GrElement.scalar(3) + el(s1, L - 1)) == "3 + (L - 1)*E~{1}[m=1]"
    assert str(-el(s12)) == "-E~{1,2}[m=1]"
    assert str(el(n1)) == "E{1}"


def test_parse_unit_and_constants():
    assert GrElement.parse("2") == GrElement.scalar(2)
    assert GrElement.parse("E{}") == GrElement.scalar(1)
    assert GrElement.parse("(L - 1)*E~{1,2}[m=2]") == el(StratumSymbol.equivariant([1, 2], 2), L - 1)


@pytest.mark.parametrize("bad", ["E~{1}[m=1] * E~{2}[m=1]", "E~{1}[m=0]", "2 +", "E~{}[m=2]"])
def test_parse_rejects(bad):
    with pytest.raises((ParseError, ValueError, TypeError)):
        GrElement.parse(bad)


def test_no_ring_product_between_symbols():
    with pytest.raises(TypeError):
        el(s1) * el(s2)


def test_forget_examples():
    assert gr_forget(el(s12)) == el(n12)
    assert gr_forget(GrElement.scalar(1)) == GrElement.scalar(1)
    assert gr_forget(el(s1, L - 1) + el(s12)) == el(n1, L - 1) + el(n12)


def test_forget_with_declared_quotients():
    quot = {s1: GrElement.scalar(L - 1)}
    assert gr_forget(el(s1, 2), quot) == GrElement.scalar(2 * (L - 1))
    with pytest.raises(MissingQuotient):
        gr_forget(el(s2), quot)


def test_specialize_examples():
    assert gr_specialize(el(s1, L - 1), 3, {s1: 1}) == 2
    assert gr_specialize(el(s1, 2 * L), 5, {s1: 6}) == 60
    assert gr_specialize(GrElement.scalar(L ** -1), 4, {}) == Fraction(1, 4)
    with pytest.raises(MissingAssignment):
        gr_specialize(el(s1), 3, {})


def test_reduce_examples():
    u = el(s2)
    assert gr_reduce(el(s1, L - 1) + u, "L-1") == u
    assert gr_reduce(GrElement.scalar(3 * L - 1), "L") == GrElement.scalar(-1)
    assert gr_reduce(el(s1, L ** -1), "L-1") == el(s1)
    with pytest.raises(NotReducible):
        gr_reduce(el(s1, L ** -1), "L")


def test_measure_cylinder():
    assert measure_cylinder(GrElement.scalar(1), 0, 2) == GrElement.scalar(L ** -2)
    assert measure_cylinder(el(s1, L), 1, 1) == el(s1, L ** -1)


@given(elements, st.integers(0, 4), st.integers(0, 3))
def test_measure_independent_of_level(c, n, m):
    assert measure_cylinder(c.scale(L ** m), n + 1, m) == measure_cylinder(c, n, m)


def test_symbol_validation():
    with pytest.raises(ValueError):
        StratumSymbol.equivariant([], 2)
    with pytest.raises(ValueError):
        StratumSymbol.equivariant([1], 0)
