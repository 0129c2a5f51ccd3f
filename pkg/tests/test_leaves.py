import functools
from itertools import product

import pytest

from coxeter.datum import CoxeterDatum
from hecke.laurent import LaurentInt
from leaves.double_leaves import degree_polynomial, double_leaves, shape_degree_polynomial
from projectors.context import SoergelContext

v = LaurentInt.v


@functools.lru_cache(maxsize=None)
def context_of(name):
    return SoergelContext.build(CoxeterDatum.from_type(name))


def test_leaves_of_one_letter():
    ctx = context_of('A2')
    s = ctx.group.generator(0)
    leaves = ctx.leaves.light_leaves((0,))
    assert [leaf.i for leaf in leaves] == [(0,), (1,)]
    assert leaves[0].target == s and leaves[0].degree == 0
    assert leaves[1].target == ctx.group.identity and leaves[1].degree == 1
    assert leaves[1].morphism == ctx.calculus.gen_m(0)


def test_leaves_of_sts():
    ctx = context_of('A2')
    s = ctx.group.generator(0)
    leaves = ctx.leaves.light_leaves((0, 1, 0))
    assert len(leaves) == 8
    degree_zero = ctx.leaves.leaves_to((0, 1, 0), s, degree=0)
    assert [leaf.i for leaf in degree_zero] == [(0, 1, 0)]
    assert degree_zero[0].j == (0, 0, 1)
    for leaf in leaves:
        assert leaf.morphism.source.word == (0, 1, 0)
        assert leaf.morphism.target.word == leaf.target_word
        assert leaf.morphism.degree == leaf.degree
        assert ctx.calculus.check_homogeneous(leaf.morphism)


def test_leaf_shapes_match_leaves():
    ctx = context_of('B2')
    word = (0, 1, 0, 1)
    shapes = ctx.leaves.leaf_shapes(word)
    built = ctx.leaves.light_leaves(word)
    assert [(l.i, l.j, l.target) for l in shapes] == [(l.i, l.j, l.target) for l in built]


def test_non_reduced_word_has_leaves():
    ctx = context_of('A2')
    leaves = ctx.leaves.light_leaves((0, 0))
    assert len(leaves) == 4
    assert sorted(leaf.degree for leaf in leaves) == [-1, 0, 1, 2]


def test_distinct_targets():
    for name in ('A2', 'B2'):
        ctx = context_of(name)
        for length in range(1, 7):
            for word in product(range(2), repeat=length):
                assert ctx.leaves.distinct_targets_violations(word) == []


def test_graded_counts_match_hecke():
    ctx = context_of('A2')
    for word in [(0,), (0, 1), (0, 1, 0), (0, 0, 1)]:
        counts = ctx.leaves.graded_counts(word)
        expected = ctx.hecke.C_word(word)
        for x in set(counts) | set(expected.support()):
            assert LaurentInt(counts.get(x, {})) == ctx.hecke.tau(x, expected)


def test_double_leaves_of_one_letter():
    ctx = context_of('A2')
    dleaves = double_leaves(ctx.leaves, (0,), (0,))
    assert len(dleaves) == 2
    assert degree_polynomial(dleaves) == v(2) + 1
    # ε∘m sorts before the identity
    assert dleaves[0].degree == 2
    assert dleaves[1].morphism == ctx.calculus.identity(ctx.calculus.obj((0,)))

    mixed = double_leaves(ctx.leaves, (0,), (1,))
    assert len(mixed) == 1
    assert mixed[0].degree == 2


def test_degree_certificate():
    for name in ('A2', 'B2'):
        ctx = context_of(name)
        words = [(), (0,), (1,), (0, 1), (1, 0), (0, 1, 0)]
        for upper, lower in product(words, repeat=2):
            expected = ctx.hecke.dlb_degree_oracle(upper, lower)
            assert shape_degree_polynomial(ctx.leaves, upper, lower) == expected


def test_degree_polynomial_of_built_leaves():
    ctx = context_of('A2')
    dleaves = double_leaves(ctx.leaves, (0, 1), (0, 1))
    assert degree_polynomial(dleaves) == ctx.hecke.dlb_degree_oracle((0, 1), (0, 1))


def test_unitriangularity_small():
    ctx = context_of('A2')
    for upper, lower in [((0,), (0,)), ((0,), (1,)), ((), ())]:
        dleaves = double_leaves(ctx.leaves, upper, lower)
        assert ctx.pairing.unitriangularity_failures(dleaves) == []


def test_dlb_expansion_of_identity():
    ctx = context_of('A2')
    obj = ctx.calculus.obj((0,))
    dleaves = double_leaves(ctx.leaves, (0,), (0,))
    expansion = ctx.pairing.expand_in_dlb(ctx.calculus.identity(obj), dleaves)
    assert expansion.coefficients[0].is_zero()
    assert expansion.coefficients[1] == ctx.calculus.ring.one()
    assert list(expansion.to_dict(ctx.datum)) == ['1']


def test_dlb_expansion_recombines():
    ctx = context_of('A2')
    dleaves = double_leaves(ctx.leaves, (0, 1), (0, 1))
    target = dleaves[-1]
    expansion = ctx.pairing.expand_in_dlb(target.morphism, dleaves)
    assert ctx.pairing.recombine(expansion, target.morphism) == target.morphism


def test_character_of_identity():
    ctx = context_of('A2')
    identity = ctx.calculus.identity(ctx.calculus.obj((0,)))
    assert ctx.characters.character(identity) == ctx.hecke.C_generator(0)

    st = ctx.calculus.identity(ctx.calculus.obj((0, 1)))
    assert ctx.characters.character(st) == ctx.hecke.C_word((0, 1))


def test_graded_ranks():
    ctx = context_of('A2')
    identity = ctx.calculus.identity(ctx.calculus.obj((0,)))
    assert ctx.characters.graded_ranks(identity, ctx.group.generator(0)) == {0: 1}
    assert ctx.characters.graded_ranks(identity, ctx.group.identity) == {1: 1}


def reduced_words(ctx, max_length=5):
    words = ctx.words
    return [w for x in ctx.group.elements() if x.length <= max_length for w in words.gre_graph(x).nodes]


@functools.lru_cache(maxsize=None)
def built_double_leaves(name, upper, lower):
    return double_leaves(context_of(name).leaves, upper, lower)


def test_reduced_words_of_rank_two():
    assert len(reduced_words(context_of('A2'))) == 7
    assert len(reduced_words(context_of('B2'))) == 9


@pytest.mark.slow
@pytest.mark.parametrize('name', ['A2', 'B2'])
def test_degree_certificate_of_all_reduced_pairs(name):
    ctx = context_of(name)
    for upper, lower in product(reduced_words(ctx), repeat=2):
        dleaves = built_double_leaves(name, upper, lower)
        assert degree_polynomial(dleaves) == ctx.hecke.dlb_degree_oracle(upper, lower), (upper, lower)


@pytest.mark.slow
@pytest.mark.parametrize('name', ['A2', 'B2'])
def test_unitriangularity_of_all_reduced_pairs(name):
    ctx = context_of(name)
    for upper, lower in product(reduced_words(ctx), repeat=2):
        dleaves = built_double_leaves(name, upper, lower)
        assert ctx.pairing.unitriangularity_failures(dleaves) == [], (upper, lower)


def test_rank_check_point_is_seeded():
    ctx = context_of('A2')
    again = SoergelContext.build(CoxeterDatum.from_type('A2'))
    point = ctx.characters.evaluation_point
    assert len(point) == ctx.calculus.ring.nvars
    assert all(c.is_constant() and c for c in point)
    assert [c.constant_term() for c in point] == [c.constant_term() for c in again.characters.evaluation_point]


def test_graded_ranks_in_positive_characteristic():
    ctx = context_of('A2').with_characteristic(3)
    st = ctx.calculus.identity(ctx.calculus.obj((0, 1)))
    assert ctx.characters.graded_ranks(st, ctx.group.identity) == {2: 1}
    assert ctx.characters.character(st) == ctx.hecke.C_word((0, 1))
