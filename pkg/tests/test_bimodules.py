import functools
from fractions import Fraction

import pytest

from algebra.scalars import PrimeField
from bimodules.calculus import BimoduleCalculus
from bimodules.morphisms import GeneratorStep, compose, compose_all
from bimodules.objects import BSObject
from coxeter.datum import CoxeterDatum
from coxeter.group import CoxeterGroup
from models.errors import MissingDecompositionError, PreconditionError, ShapeMismatchError


@functools.lru_cache(maxsize=None)
def calculus_of(name, characteristic=0):
    group = CoxeterGroup(CoxeterDatum.from_type(name))
    scalars = PrimeField(characteristic) if characteristic else None
    return BimoduleCalculus(group, scalars)


def test_basis_degrees():
    obj = BSObject((0, 1))
    assert obj.basis() == [(0, 0), (0, 1), (1, 0), (1, 1)]
    assert obj.degree_of((0, 0)) == -2
    assert obj.degree_of((1, 1)) == 2
    assert BSObject(()).basis() == [()]


def test_normal_form():
    c = calculus_of('A2')
    xs, xt = c.ring.gens()
    bs = c.obj((0,))

    one = c.one_tensor(bs)
    assert c.right_mult(one, xs) == c.basis_element(bs, (1,))

    # 1 ⊗ x_t = (x_t + x_s/2) ⊗ 1 - 1/2 ⊗ x_s
    element = c.normal_form(bs, [c.ring.one(), xt])
    assert element.coefficient((0,)) == xt + xs.scale(Fraction(1, 2))
    assert element.coefficient((1,)) == c.ring.constant(Fraction(-1, 2))

    # s-invariant polynomials slide through
    assert c.normal_form(bs, [c.ring.one(), xs * xs]) == c.element(bs, {(0,): xs * xs})

    with pytest.raises(ShapeMismatchError):
        c.normal_form(bs, [c.ring.one()])


def test_generator_relations():
    c = calculus_of('A2')
    xs = c.ring.gen(0)
    m, j, eps, p = c.gen_m(0), c.gen_j(0), c.gen_eps(0), c.gen_p(0)

    assert m.degree == 1 and eps.degree == 1
    assert j.degree == -1 and p.degree == -1

    # m ∘ ε (1) = 2 x_s
    barbell = compose(m, eps)
    assert barbell.images[()].coefficient(()) == xs.scale(2)

    assert compose(j, p).is_zero()
    for f in (m, j, eps, p):
        assert c.check_homogeneous(f)
        assert c.check_right_linearity(f) == []


def test_adjoints():
    c = calculus_of('A2')
    assert c.adjoint(c.gen_m(0)) == c.gen_eps(0)
    assert c.adjoint(c.gen_eps(1)) == c.gen_m(1)
    assert c.adjoint(c.gen_j(0)) == c.gen_p(0)
    assert c.adjoint(c.gen_p(0)) == c.gen_j(0)

    f = c.braid_morphism(0, 1)
    assert c.adjoint(f) == c.braid_morphism(1, 0)

    with pytest.raises(MissingDecompositionError):
        c.adjoint(c.gen_m(0) + c.gen_m(0))


def test_generator_steps():
    step = GeneratorStep('f', (0, 1, 0), left=(1,))
    assert step.source_word == (1, 0, 1, 0)
    assert step.target_word == (1, 1, 0, 1)
    assert step.adjoint() == GeneratorStep('f', (1, 0, 1), left=(1,))
    assert GeneratorStep('j', (0,), right=(1,)).target_word == (0, 1)
    with pytest.raises(ValueError):
        GeneratorStep('q', (0,))


def test_braid_morphism_a2():
    c = calculus_of('A2')
    f = c.braid_morphism(0, 1)
    assert f.source.word == (0, 1, 0)
    assert f.target.word == (1, 0, 1)
    assert f.degree == 0
    assert c.check_homogeneous(f)
    assert c.check_right_linearity(f) == []
    one = c.one_tensor(f.source)
    assert f.apply(one) == c.one_tensor(f.target)


def test_braid_morphism_b2_and_commuting():
    c = calculus_of('B2')
    f = c.braid_morphism(1, 0)
    assert f.source.word == (1, 0, 1, 0)
    assert c.check_right_linearity(f) == []

    c2 = calculus_of('A1xA1')
    g = c2.braid_morphism(0, 1)
    assert g.source.word == (0, 1)
    assert g.apply(c2.basis_element(g.source, (1, 1))) == c2.basis_element(g.target, (1, 1))


def test_braid_morphism_preconditions():
    c = calculus_of('A2')
    with pytest.raises(PreconditionError):
        c.braid_morphism(0, 0)
    affine = calculus_of('A~1')
    with pytest.raises(PreconditionError):
        affine.braid_morphism(0, 1)


def test_tensoring():
    c = calculus_of('A2')
    xs = c.ring.gen(0)
    f = c.tensor3((), c.gen_m(0), (1,))
    assert f.source.word == (0, 1)
    assert f.target.word == (1,)
    assert f.images[(1, 0)] == c.element(f.target, {(0,): xs})
    assert f.steps == (GeneratorStep('m', (0,), (), (1,)),)

    g = c.tensor3((1,), c.gen_m(0), ())
    assert g.target.word == (1,)
    assert c.check_right_linearity(g) == []
    assert c.from_steps((1, 0), g.steps) == g


def test_composition_shapes():
    c = calculus_of('A2')
    with pytest.raises(ShapeMismatchError):
        compose(c.gen_m(0), c.gen_m(0))
    with pytest.raises(ShapeMismatchError):
        c.gen_m(0) + c.gen_m(1)
    chain = compose_all(c.gen_m(0), c.gen_j(0), c.gen_p(0))
    assert chain.is_zero()
    assert chain.degree == -1


def test_adjunction_scalars():
    c = calculus_of('A2')
    values = c.adjunction_scalars(0)
    assert set(values) == {'left', 'right'}
    assert all(c.scalars.is_unit(v) for v in values.values())


def test_beta():
    c = calculus_of('A2')
    xs = c.ring.gen(0)
    b = c.beta((0,))
    assert b.degree == 0
    assert b.target.twist == c.group.generator(0)
    assert b.images[(0,)].coefficient(()) == c.ring.one()
    assert b.images[(1,)].coefficient(()) == -xs
    assert c.check_right_linearity(b) == []
    with pytest.raises(PreconditionError):
        c.beta((0, 0))


def test_calculus_over_prime_field():
    c = calculus_of('A2', 5)
    f = c.braid_morphism(0, 1)
    assert c.check_right_linearity(f) == []
    assert compose(c.gen_m(0), c.gen_eps(0)).images[()].coefficient(()) == c.ring.gen(0).scale(2)


def test_commuting_braid_is_invertible():
    c = calculus_of('A1xA1')
    there, back = c.braid_morphism(0, 1), c.braid_morphism(1, 0)
    assert compose(back, there) == c.identity(c.obj((0, 1)))
