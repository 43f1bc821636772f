"""Oracle-equivalence checks at the full desk-scale ranks."""

import pytest

from core.config import Config
from services.verification import VerificationService


@pytest.fixture(scope='module')
def service():
    return VerificationService(Config.get_config())


def check(service, suite, **params):
    params = {'max_a': 4, 'max_bd': 4, 'samples': 500, **params}
    [result] = service.run([suite], **params)
    assert result.passed, result.message
    return result


def test_alternating_formula_up_to_s7(service):
    assert check(service, 'alt', max_a=7).checks == 10


def test_mobius_closed_form(service):
    check(service, 'mobius', max_a=4, max_bd=4)


def test_interval_decomposition(service):
    assert check(service, 'interval', max_a=5, max_bd=4, samples=500).checks == 1500


def test_descent_classes(service):
    check(service, 'descent', max_a=4, max_bd=3)


def test_fixed_descent(service):
    check(service, 'fixed-descent', max_a=5)


def test_generating_functions(service):
    check(service, 'genfun')


def test_affine_recurrences(service):
    check(service, 'affine')


def test_lattice_properties(service):
    check(service, 'lattice', max_a=4, max_bd=3)


def test_product_rule(service):
    assert check(service, 'product').checks == 3
