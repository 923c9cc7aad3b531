#!/usr/bin/env python3
"""End-to-end tests of the command line through main.run / main.main"""

import json
from fractions import Fraction

import pytest

import config
from errors import INTERNAL_ERROR_EXIT
from main import HANDLERS, main, run


@pytest.fixture(autouse=True)
def restore_settings():
    saved = config.settings
    yield
    config.settings = saved


@pytest.fixture
def session(tmp_path):
    """Session script with s1 = sqrt 2, s2 = sqrt 3 (linear) and t = pi (algebraic)"""
    path = str(tmp_path / 'session.txt')
    for argv in (
        ['sym', 's1', 'linear', 'const:sqrt2'],
        ['sym', 's2', 'linear', 'const:sqrt3'],
        ['sym', 't', 'algebraic', 'const:pi'],
    ):
        code, report = run(argv + ['--session', path])
        assert code == 0, report
    return path


def ok(argv):
    code, report = run(argv)
    assert code == 0, report
    return report


# -- examples ------------------------------------------------------------------------

def test_separate():
    report = ok(['circ', 'separate', '1/3', '1/2', '--cap', '10'])
    assert (report['n'], report['k']) == (2, 0)
    assert report['status'] == 'yes'


def test_separate_beyond_cap():
    report = ok(['circ', 'separate', '1/100', '1/99', '--cap', '10'])
    assert report['status'] == 'unknown'


def test_decide_iso_same_group(session):
    ok(['group', 'z', '[1, s1]', '--name', 'G', '--session', session])
    report = ok(['decide', 'iso', 'G', 'G', '--session', session])
    assert report['status'] == 'yes'
    assert report['witness']['lambda'] == '1'
    assert report['provenance'].startswith('search:height=')


def test_decide_unit_span(session):
    report = ok(['decide', 'iso', 'q [1, t]', 'q [1, 1/t]', '--family', 'unit-span', '--session', session])
    assert report['status'] == 'yes'
    assert report['details']['relation']['matrix'] == [[0, 1], [1, 0]]
    assert report['provenance'] == 'exact:unit-span'


def test_decide_no_and_unknown(session):
    report = ok(['decide', 'iso', 'q [1, s1]', 'q [1, s2]', '--session', session])
    assert report['status'] == 'no'
    report = ok(['decide', 'iso', 'z [1, s1]', 'z [1, s2]', '--height', '1', '--session', session])
    assert report['status'] == 'unknown'


def test_decide_pointed_and_rank1(session):
    report = ok(['decide', 'embed', 'z [2]', 'z [3]', '--family', 'pointed', '--point-a', '2', '--point-b', '3',
                 '--session', session])
    assert report['witness']['lambda'] == '3/2'
    report = ok(['decide', 'iso', '2:inf', '2:inf,3:1', '--family', 'rank1'])
    assert report['status'] == 'yes'
    report = ok(['decide', 'iso', '2:inf', '3:inf', '--family', 'rank1'])
    assert report['status'] == 'no'


def test_decide_circle(session):
    assert ok(['decide', 'iso', '[1/3]', '[2/3]', '--family', 'circle'])['status'] == 'yes'
    assert ok(['decide', 'iso', '[s1]', '[s2]', '--family', 'circle', '--session', session])['status'] == 'no'


# -- other commands --------------------------------------------------------------------

def test_order_and_holder(session):
    ok(['type', 'new', '[1, s1]', '--name', 'V', '--session', session])
    assert ok(['order', 'cmp', 'V', '(1, 0)', '(0, 1)', '--session', session])['result'] == -1
    report = ok(['holder', 'V', '(0, 1)', '--eps', '1/1000', '--session', session])
    lo, hi = (Fraction(x) for x in report['interval'])
    assert hi - lo <= Fraction(1, 1000)
    assert lo <= Fraction(141422, 100000) and hi >= Fraction(141421, 100000)


def test_gl2(session):
    assert ok(['gl2', 'apply', '0', '1', '1', '0', 't', '--session', session])['result'] == '(1)/(t)'


def test_clo_and_odag(session):
    ok(['clo', 'new', '--order', '0<1', '--colors', '0,0', '--name', 'K', '--session', session])
    report = ok(['clo', 'embed', 'K', '0<1<2:0,1,0', '--session', session])
    assert report['injection'] == [0, 2]
    assert report['group_embedding']['injection'] == [0, 2]
    assert ok(['clo', 'embed', '0<1<2:0,1,0', 'K', '--session', session])['status'] == 'no'
    assert ok(['odag', 'cmp', '0<1:0,1', '{"1": [-1, 0]}', '{}'])['result'] == -1


def test_zeleva():
    assert ok(['zeleva', 'pow', '1/3,0', '3'])['result'] == '(0, 1)'
    assert ok(['zeleva', 'mul', '0,5', '0,-2'])['result'] == '(0, 3)'
    assert ok(['zeleva', 'cmp', '1/2,0', '1/3,1'])['result'] == -1


def test_hahn(session):
    report = ok(['hahn', 'eval', '1 - t^((1, 0))', '--group', '[1, s1]', '--name', 'f', '--session', session])
    assert report['sign'] == 1
    assert report['valuation'] == '(0, 0)'
    report = ok(['hahn', 'mul', 'f', '1 + t^((1, 0))', '--group', '[1, s1]', '--session', session])
    assert report['result'] == '1*t^((0, 0)) - 1*t^((2, 0))'
    assert ok(['hahn', 'cmp', 't^((1, 0))', '1', '--group', '[1, s1]', '--session', session])['result'] == -1


def test_hahn_negative_lead_replays(session):
    report = ok(['hahn', 'eval', '--group', '[1, s1]', '--name', 'f', '--session', session, '--', '-1*t^((1, 0))'])
    assert report['sign'] == -1
    lines = ok(['session', 'show', '--session', session])['lines']
    assert ' -- ' in lines[-1] and lines[-1].startswith('hahn eval --group')
    # every later command replays the recorded series first
    assert ok(['hahn', 'cmp', 'f', '0', '--group', '[1, s1]', '--session', session])['result'] == -1
    assert ok(['group', 'z', '[1, s1]', '--name', 'G', '--session', session])['status'] == 'ok'


def test_invariant_emit(session, tmp_path):
    out = tmp_path / 'fragment.txt'
    report = ok(['invariant', 'emit', 'z [1, t]', '--height', '1', '--out', str(out), '--session', session])
    assert report['slices'] == 4
    assert out.read_text().startswith('# archgroups invariant fragment\n')


# -- session and errors ----------------------------------------------------------------

def test_session_replay_is_deterministic(session):
    ok(['group', 'q', '[1, s1]', '--name', 'A', '--session', session])
    first = ok(['decide', 'iso', 'A', 'q [2, 2*s1]', '--session', session])
    second = ok(['decide', 'iso', 'A', 'q [2, 2*s1]', '--session', session])
    assert json.dumps(first, sort_keys=True) == json.dumps(second, sort_keys=True)
    lines = ok(['session', 'show', '--session', session])['lines']
    assert lines[0] == 'sym s1 linear const:sqrt2'
    assert lines[-1].startswith('group q')


def test_exit_codes(session):
    assert run(['decide', 'maybe', 'a', 'b'])[0] == 2
    assert run(['nonsense'])[0] == 2
    code, report = run(['gl2', 'apply', '2', '0', '0', '1', 't', '--session', session])
    assert code == 3 and report['error'] == 'ContractViolation'
    assert run(['group', 'z', '[1, s1*s1]', '--session', session])[0] == 3
    assert run(['sym', 's1', 'linear', 'const:sqrt2', '--session', session])[0] == 3
    run(['sym', 'q', 'algebraic', 'const:sqrt2', '--session', session])
    code, report = run(['circ', 'cocycle', '0', 'q*q - 2', '1/2', '--refine-cap', '8', '--session', session])
    assert code == 4 and report['error'] == 'RefinementBudgetExceeded'


def test_unexpected_failure_is_internal_error(monkeypatch):
    def broken(session, args):
        raise RuntimeError('lost the plot')

    monkeypatch.setitem(HANDLERS, 'circ', broken)
    code, report = run(['circ', 'cocycle', '0', '1/3', '2/3'])
    assert code == INTERNAL_ERROR_EXIT == 1
    assert report['error'] == 'InternalError'
    assert report['message'] == 'lost the plot'


def test_text_and_json_rendering(capsys):
    assert main(['circ', 'cocycle', '0', '1/3', '2/3']) == 0
    assert 'result: 1' in capsys.readouterr().out
    assert main(['circ', 'cocycle', '0', '2/3', '1/3', '--json']) == 0
    report = json.loads(capsys.readouterr().out)
    assert report['result'] == -1
    assert report['command'] == 'circ cocycle'


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, '-v']))
