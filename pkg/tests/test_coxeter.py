import json
from fractions import Fraction

import pytest

from coxeter.datum import CoxeterDatum, parse_type
from coxeter.group import CoxeterGroup
from coxeter.region import reflections_up_to, validate_realization, w_circle
from coxeter.words import WordCombinatorics, alternating
from models.errors import ConfigError, PreconditionError


def group_of(name):
    return CoxeterGroup(CoxeterDatum.from_type(name))


def test_named_types():
    assert parse_type('A2') == ([[2, -1], [-1, 2]], False)
    assert parse_type('A1xA1') == ([[2, 0], [0, 2]], False)
    assert parse_type('A~1') == ([[2, -2], [-2, 2]], True)
    assert parse_type('Ã1') == parse_type('A~1')
    with pytest.raises(ConfigError):
        parse_type('Q3')
    with pytest.raises(ConfigError):
        parse_type('B~2')


def test_coxeter_matrix():
    assert CoxeterDatum.from_type('A2').m(0, 1) == 3
    assert CoxeterDatum.from_type('B2').m(0, 1) == 4
    assert CoxeterDatum.from_type('G2').m(0, 1) == 6
    assert CoxeterDatum.from_type('A1xA1').m(0, 1) == 2
    assert CoxeterDatum.from_type('A~1').m(0, 1) is None
    assert CoxeterDatum.from_type('A2').m(1, 1) == 1


def test_affine_realization_dimension():
    datum = CoxeterDatum.from_type('A~1')
    assert datum.affine
    assert datum.dimension == 3
    assert datum.check_braid_relations() == []


def test_group_orders():
    assert len(group_of('A2').elements()) == 6
    assert len(group_of('B2').elements()) == 8
    assert len(group_of('A1xA1').elements()) == 4
    assert len(group_of('G2').elements()) == 12
    assert len(group_of('A3').elements()) == 24
    assert group_of('B2').longest_element().length == 4


def test_infinite_group():
    group = group_of('A~1')
    assert not group.is_finite
    assert len(group.elements_up_to(3)) == 7
    with pytest.raises(PreconditionError):
        group.elements()


def test_words_and_elements():
    group = group_of('A2')
    assert group.element_of((0, 1, 0)) == group.element_of((1, 0, 1))
    assert group.element_of((0, 0)) == group.identity
    assert group.is_reduced((0, 1, 0))
    assert not group.is_reduced((0, 1, 0, 1, 0))
    st = group.element_of((0, 1))
    assert group.inverse(st) == group.element_of((1, 0))
    assert group.right_descents(group.longest_element()) == [0, 1]


def test_parse_and_format():
    datum = CoxeterDatum.from_type('A2')
    assert datum.parse_word('s1.s2.s1') == (0, 1, 0)
    assert datum.parse_word('1,2') == (0, 1)
    assert datum.parse_word('e') == ()
    assert datum.format_word(()) == 'e'
    assert datum.format_word((1, 0)) == 's2.s1'
    with pytest.raises(ConfigError):
        datum.parse_word('s3')
    with pytest.raises(ConfigError):
        datum.parse_word('t1')


def test_cartan_file(tmp_path):
    path = tmp_path / 'b2.json'
    path.write_text(json.dumps({'label': 'B2-file', 'cartan': [[2, -1], [-2, 2]]}))
    datum = CoxeterDatum.from_file(str(path))
    assert datum.label == 'B2-file'
    assert not datum.affine
    assert datum.key != CoxeterDatum.from_type('A2').key

    with pytest.raises(ConfigError):
        CoxeterDatum.from_file(str(tmp_path / 'missing.json'))


def test_bruhat_order_matches_subwords():
    group = group_of('B2')
    elements = group.elements()
    for x in elements:
        for y in elements:
            assert group.bruhat_leq(x, y) == group.bruhat_leq_by_subwords(x, y)
    assert len(group.bruhat_interval_below(group.element_of((0, 1)))) == 4


def test_braid_moves_and_graph():
    group = group_of('A2')
    words = WordCombinatorics(group)
    assert alternating(0, 1, 3) == (0, 1, 0)

    graph = words.gre_graph(group.element_of((0, 1, 0)))
    assert graph.nodes == [(0, 1, 0), (1, 0, 1)]
    assert len(graph.edges) == 1
    assert graph.is_connected()

    moves = words.braid_moves((0, 1, 0))
    assert len(moves) == 1
    assert moves[0].target == (1, 0, 1)
    assert moves[0].length == 3


def test_reduced_word_graph_is_connected():
    group = group_of('B2')
    words = WordCombinatorics(group)
    for x in group.elements():
        assert words.gre_graph(x).is_connected()


def test_braid_path():
    group = group_of('A2')
    words = WordCombinatorics(group)
    assert words.braid_path(0, (0, 1, 0)) == ()
    path = words.braid_path(1, (0, 1, 0))
    assert len(path) == 1
    assert path[-1].target[-1] == 1

    with pytest.raises(PreconditionError):
        words.braid_path(0, (0, 1))
    with pytest.raises(PreconditionError):
        words.braid_path(0, (0, 0))


def test_canonical_words():
    group = group_of('A2')
    words = WordCombinatorics(group)
    for x in group.elements():
        word = words.canonical_word(x)
        assert group.element_of(word) == x
        assert len(word) == x.length
        assert tuple(reversed(word)) == words.canonical_word(group.inverse(x))
    assert words.canonical_word(group.element_of((0, 1, 0))) == (0, 1, 0)
    assert words.palindrome_fallbacks == set()


def test_palindrome_fallback():
    # the longest element of B2 has no palindromic reduced word
    group = group_of('B2')
    words = WordCombinatorics(group)
    w0 = group.longest_element()
    assert words.canonical_word(w0) == (0, 1, 0, 1)
    assert words.is_palindrome_fallback(w0)
    assert not words.is_palindrome_fallback(group.element_of((0, 1, 0)))
    for x in group.elements():
        if x != w0:
            assert tuple(reversed(words.canonical_word(x))) == words.canonical_word(group.inverse(x))


def test_regions():
    group = group_of('A2')
    assert len(w_circle(group)) == 6
    assert len(w_circle(group, group.element_of((0, 1)))) == 4
    assert len(w_circle(group, max_length=1)) == 3

    affine = group_of('A~1')
    with pytest.raises(ConfigError):
        w_circle(affine)
    assert len(w_circle(affine, max_length=4)) == 9


def test_reflections():
    group = group_of('A2')
    assert len(reflections_up_to(group, 3)) == 3


def test_affine_realization_is_valid():
    group = group_of('A~1')
    region = w_circle(group, max_length=4)
    report = validate_realization(group, region)
    assert report.passed, report.failures
    assert report.region_size == 9


def test_finiteness_from_cartan_matrix():
    for name in ('A2', 'B2', 'G2', 'A3', 'F4', 'A1xA1'):
        assert CoxeterDatum.from_type(name).finite, name
    assert not CoxeterDatum.from_type('A~1').finite
    assert CoxeterDatum.from_type('B2').symmetrizer == (1, Fraction(1, 2))


@pytest.mark.parametrize('cartan', [
    [[2, -3], [-3, 2]],
    [[2, -1, -1], [-1, 2, -1], [-2, -1, 2]],
])
def test_indefinite_cartan_is_infinite(cartan):
    datum = CoxeterDatum.from_cartan(cartan)
    assert not datum.affine
    assert not datum.finite
    group = CoxeterGroup(datum)
    assert not group.is_finite
    with pytest.raises(PreconditionError):
        group.elements()
    with pytest.raises(ConfigError):
        w_circle(group)
    assert len(w_circle(group, max_length=1)) == datum.rank + 1


def test_indefinite_cartan_file(tmp_path):
    path = tmp_path / 'hyperbolic.json'
    path.write_text(json.dumps({'label': 'H', 'cartan': [[2, -3], [-3, 2]]}))
    datum = CoxeterDatum.from_file(str(path))
    assert datum.label == 'H'
    assert not datum.finite
    assert datum.m(0, 1) is None
