import json

import pytest

from main import build_parser, main
from models.data_models import JobConfig
from models.errors import ConfigError


def run(capsys, *argv):
    status = main(list(argv))
    captured = capsys.readouterr()
    return status, captured.out, captured.err


def test_kl_table(capsys):
    status, out, err = run(capsys, 'kl', '--type', 'A2')
    assert status == 0
    report = json.loads(out)
    assert report['datum'] == 'A2'
    # one row per Bruhat pair y <= x in S3
    assert len(report['entries']) == 19
    rows = {(e['x'], e['y']): e['polynomial'] for e in report['entries']}
    assert rows[('s1.s2.s1', 'e')] == 'v^3'
    assert rows[('s1.s2.s1', 's1.s2.s1')] == '1'
    assert 'Step 2' in err


def test_kl_tsv(capsys):
    status, out, _ = run(capsys, 'kl', '--type', 'A1', '--format', 'tsv')
    assert status == 0
    lines = out.splitlines()
    assert lines[0] == 'x\ty\tpolynomial'
    assert len(lines) == 4


def test_leaves_of_words(capsys):
    status, out, _ = run(capsys, 'leaves', '--type', 'A2', 's1.s2.s1')
    assert status == 0
    leaves = json.loads(out)['leaves']
    assert len(leaves) == 8
    assert {'word': 's1.s2.s1', 'i': '010', 'j': '001', 'target': 's1', 'degree': 0} in leaves


def test_projector_report(capsys):
    status, out, _ = run(capsys, 'projector', '--type', 'A2', 's1.s2.s1', '--char', '3')
    assert status == 0
    [document] = json.loads(out)['projectors']
    assert document['target'] == 's1.s2.s1'
    [record] = document['lambda']
    assert record['z'] == 's1'
    assert record['det'] == '-1'
    assert document['reduction'] == {'prime': 3, 'liftable': True}


def test_character_report(capsys):
    status, out, _ = run(capsys, 'character', '--type', 'A2', 's1.s2')
    assert status == 0
    [document] = json.loads(out)['characters']
    assert document['equals_kl']
    assert document['character']['s1.s2'] == '1'


def test_badprimes_a1(capsys, tmp_path):
    status, out, _ = run(capsys, 'badprimes', '--type', 'A1', '--cache-dir', str(tmp_path))
    assert status == 0
    report = json.loads(out)
    assert report['D'] == []
    assert report['flags']['excluded_primes'] == [2]


def test_verify_a1(capsys):
    status, out, _ = run(capsys, 'verify', '--type', 'A1', '--primes', '3')
    assert status == 0
    assert json.loads(out)['passed']


def test_report_to_file(capsys, tmp_path):
    target = tmp_path / 'kl.json'
    status, out, _ = run(capsys, 'kl', '--type', 'A1', '--out', str(target))
    assert status == 0
    assert json.loads(target.read_text())['datum'] == 'A1'
    assert 'Report saved' in out


@pytest.mark.parametrize('argv', [
    ['kl', '--type', 'A2', '--char', '2'],
    ['kl', '--type', 'A2', '--char', '9'],
    ['kl', '--type', 'A~1'],
    ['kl'],
    ['kl', '--type', 'Q7'],
    ['verify', '--type', 'A1', '--primes', '4'],
    ['leaves', '--type', 'A2', 's1.s3'],
    ['projector', '--type', 'A2', 's1.s1'],
])
def test_usage_errors(capsys, argv):
    status, _, err = run(capsys, *argv)
    assert status == 2
    assert 'error' in err


def test_missing_command(capsys):
    assert main([]) == 2


def test_parser_rejects_unknown_format():
    with pytest.raises(SystemExit):
        build_parser().parse_args(['kl', '--type', 'A2', '--format', 'xml'])


def test_badprimes_rejects_prime_characteristic(capsys, tmp_path):
    status, _, err = run(capsys, 'badprimes', '--type', 'A1', '--char', '3', '--cache-dir', str(tmp_path))
    assert status == 2
    assert 'char-0' in err
    assert not any(tmp_path.iterdir())


def test_job_config_validation():
    JobConfig(command='kl', type_name='A2', characteristic=3).validate()
    with pytest.raises(ConfigError):
        JobConfig(command='badprimes', type_name='A2', characteristic=3).validate()
    with pytest.raises(ConfigError):
        JobConfig(command='kl', type_name='A~1').validate(finite=False)
    JobConfig(command='kl', type_name='A~1', region_max_length=2).validate(finite=False)


def test_badprimes_reverse_selection(capsys, tmp_path):
    status, out, _ = run(capsys, 'badprimes', '--type', 'A2', '--reverse-selection', '--cache-dir', str(tmp_path))
    assert status == 0
    flags = json.loads(out)['flags']
    assert flags['selection_order'] == 'reverse'
    assert flags['selection_order_invariant']


def test_hyperbolic_cartan_needs_region_bound(capsys, tmp_path):
    path = tmp_path / 'hyperbolic.json'
    path.write_text(json.dumps({'cartan': [[2, -3], [-3, 2]]}))
    status, _, err = run(capsys, 'kl', '--cartan-file', str(path))
    assert status == 2
    assert 'Infinite' in err

    status, out, _ = run(capsys, 'kl', '--cartan-file', str(path), '--region-max-length', '2')
    assert status == 0
    assert len(json.loads(out)['entries']) > 0
