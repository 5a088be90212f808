import math

import pytest
from hypothesis import given
from hypothesis import strategies as st

from gwdrops.units import (AREA, DIMENSIONLESS, ENERGY, ENTROPY, FORCE, LENGTH, MASS, POWER,
                           TEMPERATURE, Dimension, DimensionError, NonFiniteError, Quantity,
                           combine, constants, parse_quantity, quantity, unit)

# normal floats only: subnormal products lose relative precision by construction
_mag = st.floats(min_value=1e-100, max_value=1e12)
nonzero = st.builds(lambda m, s: m * s, _mag, st.sampled_from([1.0, -1.0]))
finite = st.one_of(st.just(0.0), nonzero)
exps = st.tuples(*[st.integers(-4, 4)] * 6).map(Dimension)


def test_quantity_zero_element():
    q = quantity(0, MASS)
    assert q == Quantity(0.0, MASS)


def test_planck_scale_mass_literal():
    q = quantity(21.8e-9, MASS)
    assert q.dim == MASS
    assert q.magnitude == pytest.approx(21.8 * unit("ug").magnitude)


def test_impedance_literal_dimension():
    C = constants()
    zg = quantity(1.1e-17, (C.G / C.c).dim)
    assert zg.dim.exponents == (-1, 2, -1, 0, 0, 0)


@pytest.mark.parametrize("bad", [math.nan, math.inf, -math.inf])
def test_non_finite_rejected(bad):
    with pytest.raises(NonFiniteError):
        quantity(bad, MASS)


def test_overflow_is_an_error_not_infinity():
    with pytest.raises(NonFiniteError):
        Quantity(1e300, MASS) * Quantity(1e300, MASS)


def test_combine_closure_and_ratios():
    m = Quantity(2.0, MASS)
    assert combine(m, m, "add") == Quantity(4.0, MASS)
    s = combine(Quantity(3.0, ENERGY), Quantity(1.5, TEMPERATURE), "div")
    assert s.dim == ENTROPY and s.magnitude == 2.0
    r = combine(Quantity(6.0, FORCE), Quantity(3.0, FORCE), "div")
    assert r.dim == DIMENSIONLESS and float(r) == 2.0


def test_mismatched_addition_rejected():
    with pytest.raises(DimensionError):
        combine(Quantity(1.0, MASS), Quantity(1.0, LENGTH), "add")
    with pytest.raises(DimensionError):
        Quantity(1.0, MASS) - Quantity(1.0, LENGTH)


def test_division_by_zero():
    with pytest.raises(ZeroDivisionError):
        combine(Quantity(1.0, MASS), Quantity(0.0, LENGTH), "div")


def test_unknown_operator():
    with pytest.raises(ValueError):
        combine(Quantity(1.0), Quantity(1.0), "pow")


def test_float_of_dimensional_quantity_rejected():
    with pytest.raises(DimensionError):
        float(Quantity(1.0, MASS))


def test_sqrt_requires_even_exponents():
    assert (Quantity(4.0, AREA)).sqrt() == Quantity(2.0, LENGTH)
    with pytest.raises(DimensionError):
        Quantity(4.0, LENGTH).sqrt()


def test_constants_pinned():
    C = constants()
    assert C.release == "CODATA 2018"
    assert C.G.magnitude == 6.67430e-11
    assert C.c.magnitude == 299792458.0
    assert C.e.magnitude == 1.602176634e-19
    assert C.k_B.magnitude == 1.380649e-23
    assert C.m_e.magnitude == 9.1093837015e-31
    assert C.N_A.magnitude == 6.02214076e23
    assert float(C.m_He4 / C.u) == pytest.approx(4.0026, abs=1e-4)
    assert constants() is C


def test_alpha():
    assert 1.0 / constants().alpha == pytest.approx(137.036, rel=1e-6)


def test_parse_quantity():
    assert parse_quantity("10mK") == pytest.approx(Quantity(0.01, TEMPERATURE))
    assert parse_quantity("1.9 ug").magnitude == pytest.approx(1.9e-9)
    assert parse_quantity("12GHz").magnitude == 12e9
    assert parse_quantity("3 pW").dim == POWER
    with pytest.raises(DimensionError):
        parse_quantity("1 T", MASS)
    with pytest.raises(ValueError):
        parse_quantity("1 furlong")


@given(finite, finite, finite, exps)
def test_addition_commutes_and_associates(a, b, c, dim):
    qa, qb, qc = Quantity(a, dim), Quantity(b, dim), Quantity(c, dim)
    assert combine(qa, qb, "add") == combine(qb, qa, "add")
    left = combine(combine(qa, qb, "add"), qc, "add").magnitude
    right = combine(qa, combine(qb, qc, "add"), "add").magnitude
    assert left == pytest.approx(right, rel=1e-15, abs=1e-15 * (abs(a) + abs(b) + abs(c)))


@given(finite, nonzero, exps, exps)
def test_mul_then_div_is_identity(a, b, da, db):
    qa, qb = Quantity(a, da), Quantity(b, db)
    back = combine(combine(qa, qb, "mul"), qb, "div")
    assert back.dim == da
    assert back.magnitude == pytest.approx(a, rel=1e-15, abs=0.0) or a == 0.0


@given(exps, exps)
def test_exponent_arithmetic(da, db):
    assert (da * db).exponents == tuple(x + y for x, y in zip(da.exponents, db.exponents))
    assert (da / db).exponents == tuple(x - y for x, y in zip(da.exponents, db.exponents))
    assert (da / da).dimensionless
