import functools

import pytest

from algebra.linear import identity, matmul
from bimodules.morphisms import compose
from coxeter.datum import CoxeterDatum
from leaves.double_leaves import degree_polynomial, double_leaves, p_double_leaves
from models.data_models import NotLiftable
from models.errors import PreconditionError
from projectors.context import SoergelContext
from projectors.favorite import FavoriteProjectorBuilder
from projectors.reduction import dlb_expansion, reduce_mod_p


@functools.lru_cache(maxsize=None)
def builder_of(name, reverse=False):
    return FavoriteProjectorBuilder(SoergelContext.build(CoxeterDatum.from_type(name)), reverse)


def test_short_words_are_identities():
    builder = builder_of('A2')
    calculus = builder.calculus
    for word in [(), (0,), (1,)]:
        projector = builder.favorite_projector(word)
        assert projector.morphism == calculus.identity(calculus.obj(word))
        assert projector.summands == []

    st = builder.favorite_projector((0, 1))
    assert st.summands == []
    assert st.morphism == calculus.identity(calculus.obj((0, 1)))


def test_projector_sts():
    builder = builder_of('A2')
    ctx = builder.context
    s = ctx.group.generator(0)
    projector = builder.favorite_projector((0, 1, 0))
    p = projector.morphism

    assert projector.target == ctx.group.longest_element()
    assert compose(p, p) == p
    assert projector.frame == ctx.calculus.identity(ctx.calculus.obj((0, 1, 0)))

    [summand] = projector.summands
    assert summand.z == s
    assert summand.multiplicity == 1
    assert [leaf.i for leaf in summand.selected] == [(0, 1, 0)]
    assert summand.lam == [[-1]]
    assert summand.eta == [[-1]]
    assert summand.det == -1
    assert summand.strategies_agree is True

    # the removed piece is an idempotent orthogonal to p
    [piece] = summand.pieces
    assert compose(piece, piece) == piece
    assert compose(p, piece).is_zero()
    assert compose(piece, p).is_zero()


def test_projector_character_sts():
    builder = builder_of('A2')
    ctx = builder.context
    projector = builder.favorite_projector((0, 1, 0))
    assert ctx.characters.character(projector.morphism) == ctx.hecke.kl_element(projector.target)


def test_projector_chain_and_records():
    builder = builder_of('A2')
    projector = builder.favorite_projector((0, 1, 0))
    assert [p.word for p in projector.chain()] == [(0, 1, 0), (0, 1), (0,)]

    [record] = projector.records(builder.datum, builder.scalars)
    assert record.z == 's1'
    assert record.lambda_matrix == [['-1']]
    assert record.determinant == '-1'
    assert record.dyadic_integral
    assert record.to_dict()['strategies_agree'] is True


def test_projectors_are_memoized():
    builder = builder_of('A2')
    assert builder.favorite_projector((0, 1, 0)) is builder.favorite_projector((0, 1, 0))


def test_non_reduced_word_is_rejected():
    builder = builder_of('A2')
    with pytest.raises(PreconditionError):
        builder.favorite_projector((0, 0))


def test_intersection_scalar():
    builder = builder_of('A2')
    ctx = builder.context
    s = ctx.group.generator(0)
    [leaf] = ctx.leaves.leaves_to((0, 1, 0), s, degree=0)
    assert builder.intersection_scalar(leaf, leaf) == -1

    positive = ctx.leaves.leaves_to((0, 1, 0), s, degree=2)
    with pytest.raises(PreconditionError):
        builder.intersection_scalar(positive[0], leaf)


def test_simplification_applies():
    builder = builder_of('A2')
    group = builder.group
    s = group.generator(0)
    assert builder.simplification_applies((0, 1), 0, s, group.longest_element())


def test_dlb_expansion_of_projector():
    builder = builder_of('A2')
    projector = builder.favorite_projector((0, 1, 0))
    expansion = dlb_expansion(projector, builder.context)
    assert expansion.nonzero()
    assert builder.context.pairing.recombine(expansion, projector.morphism) == projector.morphism
    assert all(v.denominator == 1 for v in expansion.scalar_values())


def test_dlb_expansion_is_stored_on_projector():
    builder = builder_of('B2')
    projector = builder.favorite_projector((0, 1, 0))
    expansion = dlb_expansion(projector, builder.context)
    assert projector.dlb is expansion
    assert dlb_expansion(projector, builder.context) is expansion
    assert builder.favorite_projector((0, 1, 0)).dlb is expansion


def test_reduce_mod_p():
    builder = builder_of('A2')
    ctx = builder.context
    projector = builder.favorite_projector((0, 1, 0))
    for prime in (3, 5, 7):
        contextp = ctx.with_characteristic(prime)
        reduced = reduce_mod_p(projector, prime, ctx, contextp)
        assert not isinstance(reduced, NotLiftable)
        assert compose(reduced.morphism, reduced.morphism) == reduced.morphism
        assert contextp.characters.character(reduced.morphism) == ctx.hecke.kl_element(projector.target)


def test_reduce_mod_p_preconditions():
    builder = builder_of('A2')
    ctx = builder.context
    projector = builder.favorite_projector((0, 1))
    with pytest.raises(PreconditionError):
        reduce_mod_p(projector, 2, ctx)
    with pytest.raises(PreconditionError):
        reduce_mod_p(projector, 3, ctx.with_characteristic(5))


def test_reverse_selection_agrees_on_a2():
    forward, backward = builder_of('A2'), builder_of('A2', True)
    for x in forward.group.elements():
        word = forward.context.words.canonical_word(x)
        a = forward.favorite_projector(word)
        b = backward.favorite_projector(word)
        assert [d.lam for d in a.summands] == [d.lam for d in b.summands]


@pytest.mark.slow
def test_projector_suite_b2():
    builder = builder_of('B2')
    ctx = builder.context
    for x in ctx.group.elements():
        word = ctx.words.canonical_word(x)
        projector = builder.favorite_projector(word)
        p = projector.morphism
        assert compose(p, p) == p
        for data in projector.summands:
            assert matmul(data.lam, data.eta, builder.scalars) == identity(len(data.lam), builder.scalars)
            assert len(data.candidates) >= data.multiplicity
            for a in data.pieces:
                for b in data.pieces:
                    expected = a if a is b else ctx.calculus.zero(a.source, a.target)
                    assert compose(a, b) == expected
            if data.simplified is not None:
                assert data.simplified == data.lam
        assert ctx.characters.character(p) == ctx.hecke.kl_element(x)


def test_p_double_leaves_match_degrees():
    builder = builder_of('A2')
    ctx = builder.context

    def provider(word):
        return builder.favorite_projector(word).morphism

    for word in [(0, 1), (0, 1, 0)]:
        dleaves = p_double_leaves(ctx.leaves, word, word, provider)
        assert degree_polynomial(dleaves) == ctx.hecke.dlb_degree_oracle(word, word)
        assert len(dleaves) == len(double_leaves(ctx.leaves, word, word))
