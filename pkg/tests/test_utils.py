import json

import pytest

from config import CACHE_VERSION
from coxeter.datum import CoxeterDatum
from models.errors import ConfigError
from utils.cache import ResultCache, cache_key
from utils.report_writer import render, rows_frame, write_report

ROWS = [
    {'x': 's1', 'y': 'e', 'polynomial': 'v'},
    {'x': 's1', 'y': 's1', 'polynomial': '1'},
]


def test_cache_key_is_stable():
    a2 = CoxeterDatum.from_type('A2').key
    assert cache_key('kl', {'x': [0, 1]}, a2) == cache_key('kl', {'x': [0, 1]}, a2)
    assert cache_key('kl', {'a': 1, 'b': 2}, a2) == cache_key('kl', {'b': 2, 'a': 1}, a2)
    assert len(cache_key('kl', {}, a2)) == 64


def test_cache_key_distinguishes():
    a2 = CoxeterDatum.from_type('A2').key
    b2 = CoxeterDatum.from_type('B2').key
    assert cache_key('kl', {}, a2) != cache_key('kl', {}, b2)
    assert cache_key('braid', [0, 1], a2) != cache_key('braid', [1, 0], a2)
    assert cache_key('kl', {}, a2) != cache_key('leaves', {}, a2)


def test_memory_cache():
    cache = ResultCache()
    assert cache.get('k') is None
    assert cache.misses == 1
    assert cache.get_or_compute('k', lambda: [1, 2]) == [1, 2]
    assert cache.get_or_compute('k', lambda: [3]) == [1, 2]
    assert cache.hits == 1


def test_disk_cache(tmp_path):
    key = cache_key('kl', {}, 'datum')
    ResultCache(str(tmp_path)).put(key, {'rows': 3})
    stored = tmp_path / key[:2] / f"{key}.json"
    assert json.loads(stored.read_text())['version'] == CACHE_VERSION

    fresh = ResultCache(str(tmp_path))
    assert fresh.get(key) == {'rows': 3}
    assert fresh.hits == 1


def test_disk_cache_ignores_other_versions(tmp_path):
    key = cache_key('kl', {}, 'datum')
    path = tmp_path / key[:2] / f"{key}.json"
    path.parent.mkdir(parents=True)
    path.write_text(json.dumps({'version': CACHE_VERSION - 1, 'key': key, 'value': 1}))
    assert ResultCache(str(tmp_path)).get(key) is None

    path.write_text('{not json')
    assert ResultCache(str(tmp_path)).get(key) is None


def test_rows_frame():
    frame = rows_frame('kl', ROWS)
    assert list(frame.columns) == ['x', 'y', 'polynomial']
    assert len(frame) == 2
    assert list(rows_frame('kl', []).columns) == ['x', 'y', 'polynomial']


def test_render_formats():
    payload = {'datum': 'A1', 'entries': ROWS}
    assert json.loads(render('kl', payload, ROWS, 'json')) == payload

    tsv = render('kl', payload, ROWS, 'tsv').splitlines()
    assert tsv[0] == 'x\ty\tpolynomial'
    assert tsv[1] == 's1\te\tv'

    text = render('kl', payload, ROWS, 'text')
    assert text.startswith('datum: A1\n')
    assert 'polynomial' in text
    assert '(no rows)' in render('kl', payload, [], 'text')

    with pytest.raises(ConfigError):
        render('kl', payload, ROWS, 'xml')


def test_write_report(tmp_path):
    out = tmp_path / 'reports' / 'kl.tsv'
    text = write_report('kl', {}, ROWS, 'tsv', str(out))
    assert out.read_text() == text
