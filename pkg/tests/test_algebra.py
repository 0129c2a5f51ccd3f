from fractions import Fraction

import pytest

from algebra.linear import SparseSystem, determinant, identity, inverse, is_independent, matmul, rank
from algebra.polynomial import act, demazure, demazure_split
from algebra.scalars import DyadicRing, ModP, PrimeField, RationalField, is_p_integral, scalar_ring
from coxeter.datum import CoxeterDatum
from coxeter.group import CoxeterGroup
from models.errors import ConfigError, NonUnitError, PreconditionError


def a2():
    datum = CoxeterDatum.from_type('A2')
    return CoxeterGroup(datum), datum.polynomial_ring()


def test_mod_p_arithmetic():
    assert ModP(3, 7) * ModP(5, 7) == ModP(1, 7)
    assert ModP(3, 7).inverse() == 5
    assert ModP.coerce(Fraction(1, 2), 7) == 4
    assert ModP(6, 7).signed() == -1
    with pytest.raises(NonUnitError):
        ModP(0, 5).inverse()
    with pytest.raises(NonUnitError):
        ModP.coerce(Fraction(1, 5), 5)


def test_scalar_rings():
    assert scalar_ring(0) == RationalField()
    assert scalar_ring(5) == PrimeField(5)
    assert PrimeField(5).to_text(4) == '-1'

    with pytest.raises(ConfigError):
        PrimeField(2)
    with pytest.raises(ConfigError):
        PrimeField(9)

    dyadic = DyadicRing()
    assert dyadic.contains(Fraction(3, 4))
    assert not dyadic.contains(Fraction(1, 3))
    assert dyadic.is_unit(Fraction(1, 8))
    assert not dyadic.is_unit(3)
    assert dyadic.clear_denominator(Fraction(-3, 4)) == -3
    assert dyadic.clear_denominator(5) == 5
    with pytest.raises(NonUnitError):
        dyadic.clear_denominator(Fraction(1, 3))

    assert is_p_integral(Fraction(1, 2), 3)
    assert not is_p_integral(Fraction(2, 9), 3)


def test_polynomial_degrees():
    _, ring = a2()
    xs, xt = ring.gens()
    assert xs.degree() == 2
    assert (xs * xt + xs ** 2).degree() == 4
    assert ring.one().degree() == 0
    assert ring.zero().degree() is None
    with pytest.raises(PreconditionError):
        (xs + 1).degree()
    assert (xs * xt).divide_by_variable(0) == xt
    with pytest.raises(NonUnitError):
        xt.divide_by_variable(0)


def test_action_and_demazure():
    group, ring = a2()
    s = group.generator(0)
    xs, xt = ring.gens()

    assert act(s, xt) == xt + xs
    assert act(s, xs) == -xs
    assert act(group.identity, xt) == xt

    plus, minus = demazure_split(s, xt)
    assert plus == xt + xs.scale(Fraction(1, 2))
    assert minus == ring.constant(Fraction(-1, 2))
    assert plus + xs * minus == xt
    assert act(s, plus) == plus

    assert demazure_split(s, xs) == (ring.zero(), ring.one())
    assert demazure(s, ring.one()) == ring.zero()


def test_demazure_needs_odd_characteristic():
    datum = CoxeterDatum.from_type('A2')
    group = CoxeterGroup(datum)
    ring = datum.polynomial_ring(PrimeField(3))
    plus, minus = demazure_split(group.generator(0), ring.gen(1))
    assert minus == ring.constant(1)
    assert plus == ring.gen(1) + ring.gen(0).scale(2)


def test_dense_linear_algebra():
    field = RationalField()
    m = [[1, 2], [3, 4]]
    assert determinant(m, field) == -2
    assert matmul(m, inverse(m, field), field) == identity(2, field)
    assert rank([[1, 2], [2, 4]], field) == 1
    with pytest.raises(NonUnitError):
        inverse([[1, 2], [2, 4]], field)

    f3 = PrimeField(3)
    assert rank([[1, 1], [1, 4]], f3) == 1
    assert determinant([], field) == 1


def test_sparse_system():
    field = RationalField()
    system = SparseSystem(field)
    system.add_equation({0: 1, 1: 1}, 3)
    system.add_equation({0: 1, 1: -1}, 1)
    assert system.unique_solution(2) == [2, 1]

    system = SparseSystem(field)
    system.add_equation({0: 1, 1: 1}, 3)
    with pytest.raises(PreconditionError):
        system.unique_solution(2)
    with pytest.raises(PreconditionError):
        system.add_equation({0: 2, 1: 2}, 5)


def test_independence():
    field = RationalField()
    assert is_independent([{'a': 1}, {'b': 1}], field)
    assert not is_independent([{'a': 1, 'b': 2}, {'a': 2, 'b': 4}], field)
    assert is_independent([], field)
