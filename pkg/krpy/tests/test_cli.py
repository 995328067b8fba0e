# Licensed under an MIT open source license - see LICENSE

import json
import os

from ..cli import run


def _corrupt_level_two(directory):
    # KR(2 omega) of sl2 with the string of V(1) glued on
    monomials = [[[1, 0, 1], [1, 2, 1]], [[1, 0, 1], [1, 4, -1]],
                 [[1, 2, -1], [1, 4, -1]], [[1, 6, 1]], [[1, 8, -1]]]
    document = {'algebra': 'A1', 'node': 1, 'level': 2,
                'monomials': [{'exps': exps, 'mult': 1} for exps in monomials]}
    with open(os.path.join(directory, 'A1_1_2.json'), 'w') as fh:
        json.dump(document, fh)


def test_tensor_text(capsys):
    assert run(['tensor', '--algebra', 'A1', '--node', '1',
                '--partition', '3,2']) == 0
    out = capsys.readouterr().out
    assert out.splitlines() == ['1\t1', '3\t1', '5\t1']


def test_poset_covers(capsys):
    assert run(['poset', '--m', '4', '--covers']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 4
    assert '4 -> 3,1' in lines


def test_poset_dot(capsys):
    assert run(['poset', '--m', '3', '--dot']) == 0
    assert 'digraph' in capsys.readouterr().out


def test_positivity_json(capsys):
    argv = ['verify', 'positivity', '--algebra', 'A2', '--node', '1',
            '--m', '5', '--format', 'json']
    assert run(argv) == 0
    first = capsys.readouterr().out
    document = json.loads(first)
    assert document['violations'] == []
    assert document['algebra'] == 'A2'
    assert run(argv) == 0
    assert capsys.readouterr().out == first


def test_positivity_violation_from_corrupted_cache(tmp_path, capsys):
    _corrupt_level_two(str(tmp_path))
    code = run(['verify', 'positivity', '--algebra', 'A1', '--node', '1',
                '--m', '3', '--cache-dir', str(tmp_path), '--format', 'json'])
    assert code == 1
    document = json.loads(capsys.readouterr().out)
    assert [(v['lower'], v['upper'], v['weight'])
            for v in document['violations']] == [('2,1', '1,1,1', [0]),
                                                  ('2,1', '1,1,1', [2])]


def test_unreadable_cache(tmp_path, capsys):
    with open(os.path.join(str(tmp_path), 'A1_1_1.json'), 'w') as fh:
        fh.write('{not json')
    assert run(['char', '--algebra', 'A1', '--node', '1', '--m', '1',
                '--cache-dir', str(tmp_path)]) == 3


def test_budget_exit_code(tmp_path):
    assert run(['qchar', '--algebra', 'A2', '--node', '1', '--m', '3',
                '--budget', '2', '--cache-dir', str(tmp_path)]) == 3


def test_cache_dir_from_environment(tmp_path, monkeypatch):
    monkeypatch.setenv('KR_CACHE_DIR', str(tmp_path))
    assert run(['qchar', '--algebra', 'A1', '--node', '1', '--m', '2']) == 0
    assert os.path.exists(os.path.join(str(tmp_path), 'A1_1_2.json'))


def test_usage_errors(capsys):
    assert run(['tensor', '--algebra', 'A1', '--node', '1',
                '--partition', '3,2', '--bogus']) == 2
    assert 'usage' in capsys.readouterr().err
    assert run(['char', '--algebra', 'X9', '--node', '1', '--m', '1']) == 2
    assert run(['char', '--algebra', 'A2', '--node', '3', '--m', '1']) == 2
    assert run(['tensor', '--algebra', 'A1', '--node', '1',
                '--partition', '1,2']) == 2
    assert run(['kernel', '--algebra', 'A1', '--node', '1', '--upper', '6',
                '--lower', '5,1']) == 2


def test_char_tsv(capsys):
    assert run(['char', '--algebra', 'A2', '--node', '1', '--m', '2',
                '--format', 'tsv']) == 0
    lines = capsys.readouterr().out.splitlines()
    assert lines[0].split('\t') == ['weight', 'mult']
    assert len(lines) == 7


def test_qchar_json(capsys):
    assert run(['qchar', '--algebra', 'A1', '--node', '1', '--m', '1',
                '--format', 'json']) == 0
    document = json.loads(capsys.readouterr().out)
    assert len(document['monomials']) == 2
    assert document['highest'] == [[1, 0, 1]]


def test_verify_systems(capsys):
    assert run(['verify', 'qsystem', '--algebra', 'B2', '--m', '2',
                '--format', 'json']) == 0
    assert json.loads(capsys.readouterr().out)['violations'] == []
    assert run(['verify', 'tsystem', '--algebra', 'A2', '--node', '2',
                '--m', '2']) == 0


def test_kernel_and_factorize(capsys):
    assert run(['kernel', '--algebra', 'A3', '--node', '2', '--upper', '5,1',
                '--lower', '6']) == 0
    assert capsys.readouterr().out.splitlines() == ['0,4,0\t1', '1,4,1\t1']
    assert run(['factorize', '--algebra', 'A3', '--node', '2',
                '--kernel', '5,1', '6']) == 0
    assert capsys.readouterr().out.strip() == 'none'
    assert run(['factorize', '--algebra', 'A2', '--node', '1',
                '--qsystem', '1', '--format', 'json']) == 0
    assert json.loads(capsys.readouterr().out)['factors'] == [[2, 1]]


def test_schur_diff(capsys):
    assert run(['schur-diff', '--algebra', 'A2', '--mu', '1,0', '1,0',
                '--lam', '2,0', '0,0', '--format', 'json']) == 0
    document = json.loads(capsys.readouterr().out)
    assert document['components'] == [{'weight': [0, 1], 'mult': 1}]
    assert document['comparable'] and document['nonnegative']
