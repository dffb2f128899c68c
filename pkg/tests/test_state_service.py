import math

import numpy as np
import pytest
from scipy.stats import chisquare

from qspeedlab.config.rules import FAMILY_RANGES
from qspeedlab.services import QuantifyService, StateService
from qspeedlab.services.error_handler import ValidationError

S = 1 / math.sqrt(2)


@pytest.mark.parametrize('kind, amps', [
    ('phi+', [S, 0, 0, S]),
    ('phi-', [S, 0, 0, -S]),
    ('psi+', [0, S, S, 0]),
    ('psi-', [0, S, -S, 0]),
])
def test_bell_state_amplitudes(kind, amps):
    np.testing.assert_allclose(StateService.bell_state(kind).amps, amps)


def test_unknown_bell_state():
    with pytest.raises(ValidationError):
        StateService.bell_state('phi0')


def test_werner_endpoints(family):
    psi_plus = np.outer([0, S, S, 0], [0, S, S, 0])
    np.testing.assert_allclose(family('werner', 1.0).mat, psi_plus, atol=1e-15)
    np.testing.assert_allclose(family('werner', 0.0).mat, np.eye(4) / 4)


def test_gisin_half(family):
    mat = family('gisin', 0.5).mat
    np.testing.assert_allclose(np.diag(mat).real, [0.25, 0.25, 0.25, 0.25])
    assert mat[1, 2] == pytest.approx(0.25)
    assert mat[0, 3] == 0


def test_rho3_and_product_mixture(family):
    rho3 = family('rho3', 0.3).mat
    assert rho3[0, 0].real == pytest.approx(0.7)
    assert rho3[1, 2].real == pytest.approx(0.15)
    mixture = family('product_mixture', 0.25).mat
    np.testing.assert_allclose(mixture, np.diag([0.75, 0, 0, 0.25]))


def test_pure_families():
    phi = StateService.pure_family_state(StateService.family_spec('pure_phi', 0.6))
    np.testing.assert_allclose(phi.amps, [0.8, 0, 0, 0.6])
    ent = StateService.pure_family_state(StateService.family_spec('pure_ent', math.pi / 6))
    np.testing.assert_allclose(ent.amps, [0, -0.5, math.sqrt(3) / 2, 0])


def test_pure_family_density_is_projector(family):
    rho = family('pure_ent', 0.4)
    assert rho.purity == pytest.approx(1.0)


@pytest.mark.parametrize('name, param', [
    ('werner', 1.2), ('gisin', -0.1), ('pure_ent', 2.0), ('ghz', 0.5), ('rho3', float('nan')),
])
def test_family_spec_rejects(name, param):
    with pytest.raises(ValidationError):
        StateService.family_spec(name, param)


def test_mixed_family_has_no_pure_state():
    with pytest.raises(ValidationError):
        StateService.pure_family_state(StateService.family_spec('werner', 0.5))


def test_sampler_is_deterministic():
    first = StateService.sample_separable(9, 3)
    second = StateService.sample_separable(9, 3)
    np.testing.assert_array_equal(first.state.mat, second.state.mat)
    assert first.num_terms == second.num_terms
    assert first.seed_tag == second.seed_tag


def test_sampler_keys_differ():
    a = StateService.sample_separable(9, 3)
    b = StateService.sample_separable(9, 4)
    c = StateService.sample_separable(10, 3)
    assert not np.allclose(a.state.mat, b.state.mat)
    assert not np.allclose(a.state.mat, c.state.mat)
    assert a.seed_tag != b.seed_tag


def test_sampler_term_count_in_range():
    counts = {StateService.sample_separable(1, i, max_terms=3).num_terms for i in range(60)}
    assert counts <= {1, 2, 3}
    assert len(counts) > 1


def test_sampler_single_term_is_pure_product():
    sample = StateService.sample_separable(5, 0, max_terms=1)
    assert sample.num_terms == 1
    assert sample.state.purity == pytest.approx(1.0, abs=1e-12)
    assert QuantifyService.concurrence(sample.state) == 0.0


def test_sampled_states_are_separable():
    for index in range(50):
        state = StateService.sample_separable(42, index).state
        assert QuantifyService.is_separable_ppt(state)


@pytest.mark.parametrize('seed, index, max_terms', [(-1, 0, 8), (0, -1, 8), (0, 0, 0), (0, 0, 17)])
def test_sampler_rejects_bad_keys(seed, index, max_terms):
    with pytest.raises(ValidationError):
        StateService.sample_separable(seed, index, max_terms)


def test_qubit_from_bloch_is_pure():
    rho = StateService.qubit_from_bloch(0.3, 1.1)
    assert np.trace(rho).real == pytest.approx(1.0)
    assert np.trace(rho @ rho).real == pytest.approx(1.0)


def test_sampler_accepts_largest_seed():
    sample = StateService.sample_separable(2 ** 64 - 1, 2 ** 64 - 1, max_terms=2)
    assert np.trace(sample.state.mat).real == pytest.approx(1.0)
    with pytest.raises(ValidationError):
        StateService.sample_separable(2 ** 64, 0)


@pytest.mark.parametrize('x', np.linspace(0.0, 1.0, 21))
def test_werner_spectrum(family, x):
    eigenvalues = np.linalg.eigvalsh(family('werner', float(x)).mat)
    expected = sorted([(1 - x) / 4] * 3 + [(1 + 3 * x) / 4])
    np.testing.assert_allclose(eigenvalues, expected, atol=1e-12)


@pytest.mark.parametrize('name', list(FAMILY_RANGES))
def test_families_are_continuous_in_parameter(name, family):
    low, high = FAMILY_RANGES[name]
    for param in np.linspace(low, high, 8)[:-1]:
        step = family(name, float(param)).mat - family(name, float(param) + 1e-6).mat
        assert np.max(np.abs(step)) < 1e-5, (name, param)


def bloch_vector(qubit):
    return np.array([2 * qubit[0, 1].real, -2 * qubit[0, 1].imag, (qubit[0, 0] - qubit[1, 1]).real])


def test_single_term_marginals_are_uniform_on_sphere():
    counts = np.zeros((2, 8))
    for index in range(4000):
        state = StateService.sample_separable(2024, index, max_terms=1).state
        for side, qubit in enumerate(QuantifyService.reduced_states(state)):
            octant = np.dot(bloch_vector(qubit) > 0, [4, 2, 1])
            counts[side, octant] += 1
    for side_counts in counts:
        assert chisquare(side_counts).pvalue > 1e-3


def test_sampled_mixtures_pass_ppt_in_bulk():
    for index in range(2000):
        assert QuantifyService.is_separable_ppt(StateService.sample_separable(77, index).state), index
