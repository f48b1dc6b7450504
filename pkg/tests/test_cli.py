import json

import pytest

import cli
import config
import database


def run(capsys, *argv):
    code = cli.main(list(argv))
    out, err = capsys.readouterr()
    return code, out.strip(), err.strip()


def test_klpoly(capsys):
    code, out, _ = run(capsys, 'klpoly', '--u', '1234', '--w', '4231')
    assert code == 0
    assert 'P_{1234,4231} = 1+q' in out
    code, out, _ = run(capsys, 'klpoly', '--u', '12', '--w', '21', '--json')
    assert json.loads(out) == {'u': '12', 'w': '21', 'P': '1', 'R': '-1+q'}


def test_kltable(capsys, tmp_path):
    path = tmp_path / 'kl2.json'
    code, _, _ = run(capsys, 'kltable', '--n', '2', '--out', str(path))
    assert code == 0
    table = json.loads(path.read_text())
    assert table['P']['12,21'] == '1'
    assert table['R']['12,21'] == '-1+q'


def test_trace(capsys):
    assert run(capsys, 'trace', '--family', 'eps_llt', '--lambda', '1,1', '--at', 'T:21', '--n', '2')[1] == '-1+q'
    assert run(capsys, 'trace', '--family', 'eps_llt', '--lambda', '2', '--at', 'T:21', '--n', '2')[1] == '0'
    assert run(capsys, 'trace', '--family', 'eps', '--lambda', '1,1', '--at', 'ctilde:21')[1] == '1+q'
    code, out, _ = run(capsys, 'trace', '--family', 'eta', '--lambda', '2', '--json')
    assert code == 0
    assert json.loads(out)['values'] == {'12': '1', '21': 'q'}


def test_ysym(capsys):
    assert run(capsys, 'ysym', '--at', 'ctilde:21')[1] == '(1+q)·m[1,1]'
    assert run(capsys, 'ysym', '--at', 'T:12', '--basis', 'p')[1] == 'p[1,1]'


def test_llt_and_chromatic(capsys):
    assert run(capsys, 'llt', '--w', '21')[1] == 'm[2] + (1+q)·m[1,1]'
    assert run(capsys, 'chromatic', '--w', '231')[1] == 'q·m[2,1] + (1+4q+q^{2})·m[1,1,1]'
    assert run(capsys, 'chromatic', '--w', '231', '--N', '4')[1] == 'q·m[2,1] + (1+4q+q^{2})·m[1,1,1]'


def test_qnormalize(capsys):
    expected = 't[1,1]·t[2,2] + (-q^{-1/2}+q^{1/2})·t[1,2]·t[2,1]'
    assert run(capsys, 'qnormalize', '--word', '2,2;1,1')[1] == expected
    assert run(capsys, 'qnormalize', '--word', '2,2;1,1', '--strategy', 'random', '--seed', '7')[1] == expected
    code, out, _ = run(capsys, 'qnormalize', '--word', '2,2;1,1', '--json')
    assert json.loads(out)['terms'] == {'1,1;2,2': '1', '1,2;2,1': '-q^{-1/2}+q^{1/2}'}


def test_immanant(capsys):
    code, out, _ = run(capsys, 'immanant', '--family', 'eps', '--lambda', '1,1')
    assert code == 0
    assert out == '2·t[1,1]·t[2,2] + (-q^{-1/2}+q^{1/2})·t[1,2]·t[2,1]'
    code, out, _ = run(capsys, 'immanant', '--family', 'eta', '--lambda', '2', '--json')
    assert code == 0
    data = json.loads(out)
    assert data['denominator'] == '1'
    assert data['immanant'] == 't[1,1]·t[2,2] + q^{1/2}·t[1,2]·t[2,1]'


def test_verify(capsys):
    code, out, _ = run(capsys, 'verify', 'hecke', '--n', '2')
    assert code == 0
    assert 'hecke:associativity n=1: pass' in out
    assert 'hecke:group_algebra n=2: pass' in out


def test_verify_store(capsys, tmp_path, monkeypatch):
    monkeypatch.setattr(config, 'DATABASE', str(tmp_path / 'reports.db'))
    code, _, _ = run(capsys, 'verify', 'kl', '--n', '2', '--store', '--json')
    assert code == 0
    conn = database.connect()
    try:
        rows = database.fetch_reports(conn, identity='kl:')
    finally:
        conn.close()
    assert len(rows) == 4
    assert {row['status'] for row in rows} == {'pass'}


@pytest.mark.parametrize('argv,code,fragment', [
    (['klpoly', '--u', '12', '--w', '123'], 2, 'EInput:Size mismatch'),
    (['llt', '--w', '312'], 2, 'EInput:Forbidden pattern'),
    (['trace', '--family', 'eps', '--lambda', '2,1', '--n', '2'], 2, 'EInput:Size mismatch'),
    (['trace', '--family', 'eps', '--lambda', '1,1,1,1,1,1,1,1'], 2, 'EInput:Size guard exceeded'),
    (['verify', 'nope', '--n', '1'], 2, 'EInput:Invalid arguments'),
    (['qnormalize', '--word', '2;1'], 2, 'EInput:Unparseable expression'),
])
def test_input_errors(capsys, argv, code, fragment):
    got, _, err = run(capsys, *argv)
    assert got == code
    assert fragment in err


def test_usage_errors(capsys):
    assert cli.main(['trace']) == 2
    assert cli.main([]) == 2
    assert cli.main(['--help']) == 0


def test_malformed_size_guard_exits_with_input_error(capsys, monkeypatch):
    monkeypatch.setenv('KERNEL_MAX_N', 'lots')
    code, _, err = run(capsys, 'verify', 'hecke', '--n', '2')
    assert code == 2
    assert 'EInput:Size guard exceeded' in err
