import pytest

from core.errors import VerificationFailure
from services.verification import SUITES, VerificationService


@pytest.fixture(scope='module')
def service():
    return VerificationService({
        'enumerationCap': 100000,
        'subsetRankCap': 62,
        'verifyWorkers': 2,
        'randomSeed': 7,
    })


@pytest.mark.parametrize("suite", SUITES)
def test_suite_passes_at_small_ranks(service, suite):
    [result] = service.run([suite], max_a=3, max_bd=3, samples=40)
    assert result.passed, result.message
    assert result.checks > 0


def test_results_keep_requested_order(service, capsys):
    results = service.run(['product', 'alt'], max_a=3, max_bd=2, samples=1)
    assert [r.name for r in results] == ['product', 'alt']
    err = capsys.readouterr().err
    assert err.index('product') < err.index('alt')


def test_unknown_suite(service):
    with pytest.raises(VerificationFailure):
        service.run(['bogus'], max_a=2, max_bd=2, samples=1)


def test_posets_are_shared(service):
    assert service.poset('A', 2) is service.poset('A', 2)
