import pytest

from core.coxeter import Family
from core.errors import UsageError
from core.polynomial import IntPolynomial
from main import EXIT_FAILED, EXIT_OK, EXIT_USAGE, main
from services.report import ReportService, ResultRow
from services.validation import CommandRequest, ValidationService
from services.verification import SuiteResult

q = IntPolynomial.q()


def run_cli(capsys, *argv):
    code = main(list(argv))
    captured = capsys.readouterr()
    return code, captured.out.strip(), captured.err


def test_charpoly_range_as_csv(capsys):
    code, out, err = run_cli(capsys, 'charpoly', '-f', 'A', '-n', '1', '--to', '3', '--format', 'csv')
    assert code == EXIT_OK
    assert out.splitlines() == [
        'family,rank,polynomial,degree',
        'A,1,q - 1,1',
        'A,2,q^3 - 2q^2 + 1,3',
        'A,3,q^6 - 3q^5 + q^4 + 2q^3 - 1,6',
    ]
    assert '(agree)' in err


def test_single_rank_prints_bare_polynomial(capsys):
    code, out, err = run_cli(capsys, 'charpoly', '-f', 'B', '-n', '2')
    assert code == EXIT_OK
    assert out == 'q^4 - 2q^3 + 1'
    assert 'subset' in err and 'poset' in err


def test_modified_single_method(capsys):
    code, out, err = run_cli(capsys, 'modified', '-f', 'D', '-n', '3', '--method', 'series')
    assert code == EXIT_OK
    assert out == '-q^6 + 2q^3 + q^2 - 3q + 1'
    assert 'routes: series (agree)' in err


def test_series_text(capsys):
    code, out, _ = run_cli(capsys, 'series', '-f', 'A', '-N', '3')
    assert code == EXIT_OK
    assert out == 'A_0: 1\nA_1: -q + 1\nA_2: q^3 - 2q + 1'


def test_series_counts(capsys):
    code, out, _ = run_cli(capsys, 'series', '-f', 'A', '-N', '3', '--counts')
    assert code == EXIT_OK
    assert out.splitlines() == ['A_0: (0,0)=1', 'A_1: (0,0)=1 (1,1)=1', 'A_2: (0,0)=1 (1,1)=2 (2,3)=1']


def test_affine_both(capsys):
    code, out, _ = run_cli(capsys, 'affine', '-f', 'AffC', '-n', '2', '--method', 'both')
    assert code == EXIT_OK
    assert out == 'direct: 2q^4 + q^2 - 3q + 1\nrecurrence: 2q^4 + q^2 - 3q + 1\nagree: yes'


def test_alt_json(capsys):
    code, out, err = run_cli(capsys, 'alt', '-n', '4', '--format', 'json')
    assert code == EXIT_OK
    assert out == '{"variable":"q","terms":[[3,"1"],[2,"-2"],[1,"1"]]}'
    assert 'fixed-descent' in err


def test_descent_class(capsys):
    code, out, err = run_cli(capsys, 'descent-class', '-n', '5', '-I', '2,4')
    assert code == EXIT_OK
    assert out == 'q^10 - 3q^9 + 3q^8 - q^7'
    assert 'routes: decompose, formula, poset (agree)' in err


@pytest.mark.parametrize("argv,exit_code,code", [
    (['alt', '-n', '1'], EXIT_FAILED, 'range'),
    (['charpoly', '-f', 'A'], EXIT_USAGE, 'usage'),
    (['affine', '-f', 'A', '-n', '3'], EXIT_USAGE, 'usage'),
    (['charpoly', '-f', 'E', '-n', '3'], EXIT_FAILED, 'range'),
    (['descent-class', '-n', '3', '-I', '3', '--method', 'formula'], EXIT_FAILED, 'interior'),
    (['descent-class', '-n', '3', '-I', '1,2', '-J', '1'], EXIT_FAILED, 'descent-set'),
    (['charpoly', '-f', 'A', '-n', '4', '--method', 'poset', '--cap', '10'], EXIT_FAILED, 'budget'),
    (['series', '-f', 'D', '-N', '0'], EXIT_USAGE, 'usage'),
])
def test_errors(capsys, argv, exit_code, code):
    result, out, err = run_cli(capsys, *argv)
    assert result == exit_code
    assert out == ''
    assert err.startswith(f'error: {code}:')


def test_verify_single_suite(capsys):
    code, out, err = run_cli(capsys, 'verify', '--suite', 'product')
    assert code == EXIT_OK
    assert out.splitlines()[-1] == '1/1 suites passed'
    assert '✓ product' in err


def test_validation_collects_every_problem():
    request = CommandRequest('charpoly', family=Family.AFF_A, rank=2, rank_to=1, lower=frozenset({1}))
    errors = ValidationService().collect_errors(request)
    assert len(errors) == 3
    with pytest.raises(UsageError):
        ValidationService().validate(request)


def test_request_ranks():
    assert CommandRequest('charpoly', rank=2, rank_to=4).ranks == [2, 3, 4]
    assert CommandRequest('charpoly', rank=2).ranks == [2]
    assert CommandRequest('verify').ranks == []


def test_report_formats():
    rows = [ResultRow(Family.A, 1, q - 1), ResultRow(Family.A, 2, q ** 3 - 2 * q ** 2 + 1)]
    assert ReportService('text').format_rows(rows) == 'A_1: q - 1\nA_2: q^3 - 2q^2 + 1'
    assert ReportService('json').format_rows(rows[:1], labelled=True) == (
        '[{"family":"A","rank":1,"polynomial":{"variable":"q","terms":[[1,"1"],[0,"-1"]]}}]'
    )


def test_report_disagreeing_routes():
    text = ReportService('text').format_routes('AffA_2', {'direct': q, 'recurrence': q - 1})
    assert text.splitlines()[-1] == 'agree: no'


def test_verification_table():
    results = [SuiteResult('alt', True, 6, 3), SuiteResult('mobius', False, 2, 9, 'A_2: mismatch')]
    text = ReportService('text').format_verification(results)
    assert text.splitlines() == [
        'suite   status  checks',
        'alt     pass    6',
        'mobius  FAIL    2',
        '1/2 suites passed',
    ]


def test_series_uses_configured_truncation(capsys, monkeypatch):
    monkeypatch.setenv('WEAKCHAR_TRUNCATION', '4')
    code, out, _ = run_cli(capsys, 'series', '-f', 'B')
    assert code == EXIT_OK
    assert [line.split(':')[0] for line in out.splitlines()] == ['B_0', 'B_1', 'B_2', 'B_3']
