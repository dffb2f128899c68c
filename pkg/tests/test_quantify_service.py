import numpy as np
import pytest
from conftest import random_config, random_mixed_state, random_pure_amps

from qspeedlab.models import DensityMatrix, PureState
from qspeedlab.services import DynamicsService, QuantifyService, StateService
from qspeedlab.services.error_handler import LinalgError


def test_concurrence_bell_and_product(family):
    assert QuantifyService.concurrence(StateService.bell_state('psi+').density()) == pytest.approx(1.0)
    assert QuantifyService.concurrence(StateService.bell_state('phi-').density()) == pytest.approx(1.0)
    product = PureState(amps=np.kron([0.6, 0.8j], [1, 0])).density()
    assert QuantifyService.concurrence(product) == 0.0


def test_concurrence_rho3_is_linear(family):
    for x in np.linspace(0.1, 0.9, 9):
        assert QuantifyService.concurrence(family('rho3', float(x))) == pytest.approx(x, abs=1e-9)


def test_werner_concurrence_closed_form(family):
    for x in (0.2, 0.5, 0.8):
        expected = max(0.0, (3 * x - 1) / 2)
        assert QuantifyService.concurrence(family('werner', x)) == pytest.approx(expected, abs=1e-9)


@pytest.mark.parametrize('name, x, separable', [
    ('werner', 0.4, False),
    ('werner', 0.3, True),
    ('gisin', 0.4, True),
    ('gisin', 0.6, False),
    ('rho3', 0.01, False),
    ('product_mixture', 0.5, True),
])
def test_ppt(name, x, separable, family):
    assert QuantifyService.is_separable_ppt(family(name, x)) is separable


@pytest.mark.parametrize('name, threshold', [('werner', 1 / 3), ('gisin', 0.5), ('rho3', 0.0)])
def test_ppt_flip_points(name, threshold, family):
    xs = np.round(np.arange(0.0, 1.0005, 1e-3), 3)
    flip = next(x for x in xs if not QuantifyService.is_separable_ppt(family(name, float(x))))
    assert abs(flip - threshold) <= 2e-3


def test_entropy_values(family):
    assert QuantifyService.entropy_vn(StateService.bell_state('psi-').density()) == pytest.approx(0.0, abs=1e-12)
    assert QuantifyService.entropy_vn(family('werner', 0.0)) == pytest.approx(2.0)
    assert QuantifyService.entropy_vn(family('product_mixture', 0.5)) == pytest.approx(1.0)
    assert QuantifyService.entropy_vn(np.eye(2) / 2) == pytest.approx(1.0)


def test_entropy_rejects_negative_operator():
    with pytest.raises(LinalgError):
        QuantifyService.entropy_vn(np.diag([1.1, -0.1]))


def test_entropy_rejects_bad_trace():
    with pytest.raises(LinalgError):
        QuantifyService.entropy_vn(np.eye(2))


def test_mutual_information(family):
    assert QuantifyService.mutual_information(family('werner', 1.0)) == pytest.approx(2.0)
    product = PureState(amps=[0, 1, 0, 0]).density()
    assert QuantifyService.mutual_information(product) == pytest.approx(0.0, abs=1e-12)
    assert QuantifyService.mutual_information(family('product_mixture', 0.5)) == pytest.approx(1.0)


def test_reduced_states_of_bell_are_maximally_mixed():
    rho_a, rho_b = QuantifyService.reduced_states(StateService.bell_state('phi+').density())
    np.testing.assert_allclose(rho_a, np.eye(2) / 2, atol=1e-15)
    np.testing.assert_allclose(rho_b, np.eye(2) / 2, atol=1e-15)


def test_measure_report_werner_pure(family):
    report = QuantifyService.measure_report(family('werner', 1.0))
    assert report.concurrence == pytest.approx(1.0)
    assert report.entropy_ab == pytest.approx(0.0, abs=1e-12)
    assert report.entropy_a == pytest.approx(1.0)
    assert report.entropy_b == pytest.approx(1.0)
    assert report.mutual_info == pytest.approx(2.0)
    assert report.separable is False


def test_measure_report_maximally_mixed(family):
    report = QuantifyService.measure_report(family('werner', 0.0))
    assert report.concurrence == 0.0
    assert report.entropy_ab == pytest.approx(2.0)
    assert report.mutual_info == pytest.approx(0.0, abs=1e-12)
    assert report.separable is True


def test_gisin_boundary_is_separable(family):
    report = QuantifyService.measure_report(family('gisin', 0.5))
    assert report.separable is True
    assert report.concurrence == 0.0


def test_ppt_agrees_with_concurrence(rng):
    for i in range(600):
        if i % 3 == 0:
            rho = PureState(amps=random_pure_amps(rng)).density()
        else:
            rho = random_mixed_state(rng, rank=1 + i % 4)
        assert QuantifyService.is_separable_ppt(rho) == (QuantifyService.concurrence(rho) <= 1e-7)


def test_entropy_additive_on_products(rng):
    for _ in range(20):
        a = random_mixed_state(rng).mat
        rho_a = a[:2, :2] / np.trace(a[:2, :2])
        rho_b = a[2:, 2:] / np.trace(a[2:, 2:])
        product = DensityMatrix(mat=np.kron(rho_a, rho_b))
        assert QuantifyService.entropy_vn(product) == pytest.approx(
            QuantifyService.entropy_vn(rho_a) + QuantifyService.entropy_vn(rho_b), abs=1e-9)


def test_local_unitary_invariance(rng):
    for _ in range(30):
        rho = random_mixed_state(rng, rank=2)
        config = random_config(rng)
        evolved = DynamicsService.evolve(rho, config, rng.uniform(0, 3))
        assert QuantifyService.mutual_information(evolved) == pytest.approx(
            QuantifyService.mutual_information(rho), abs=1e-9)
        assert QuantifyService.concurrence(evolved) == pytest.approx(
            QuantifyService.concurrence(rho), abs=1e-9)
