import math

import numpy as np
import pytest

from qspeedlab.services import ValidationService
from qspeedlab.services.error_handler import ValidationError


def test_family_selection():
    selection = ValidationService.validate_state(family='werner', x=0.5)
    assert selection.pure is None and selection.alpha is None
    assert selection.label == 'werner(x=0.5)'


def test_pure_phi_family_routes_to_alpha():
    selection = ValidationService.validate_state(family='pure_phi', x=0.6)
    assert selection.alpha == pytest.approx(0.6)
    np.testing.assert_allclose(selection.pure.amps, [0.8, 0, 0, 0.6])


def test_pure_ent_family_routes_to_gamma():
    selection = ValidationService.validate_state(family='pure_ent', x=math.pi / 4)
    assert selection.pure is not None and selection.alpha is None


def test_bell_selection():
    selection = ValidationService.validate_state(bell='psi-')
    assert selection.rho.purity == pytest.approx(1.0)
    assert selection.label == 'psi-'


@pytest.mark.parametrize('kwargs', [
    {},
    {'family': 'werner', 'x': 0.5, 'bell': 'phi+'},
    {'alpha': 0.5, 'gamma': 0.1},
    {'family': 'werner'},
    {'x': 0.5},
    {'family': 'bloch', 'x': 0.5},
    {'family': 'gisin', 'x': 1.5},
    {'alpha': float('inf')},
    {'gamma': 2.0},
])
def test_invalid_state_selection(kwargs):
    with pytest.raises(ValidationError):
        ValidationService.validate_state(**kwargs)


def test_config_defaults_and_shorthands():
    xx = ValidationService.validate_config()
    assert xx.angles() == pytest.approx((math.pi / 2, 0.0, math.pi / 2, 0.0))
    z_minus_z = ValidationService.validate_config('z-z')
    np.testing.assert_allclose(z_minus_z.dir_b.vector, [0, 0, -1], atol=1e-15)


def test_explicit_angles_are_canonicalized():
    config = ValidationService.validate_config(theta_a=-0.5, phi_a=7.0, theta_b=1.0, phi_b=0.0)
    assert 0.0 <= config.dir_a.theta <= math.pi
    assert 0.0 <= config.dir_a.phi < 2 * math.pi
    np.testing.assert_allclose(config.dir_a.vector,
                               [math.sin(-0.5) * math.cos(7.0), math.sin(-0.5) * math.sin(7.0),
                                math.cos(-0.5)], atol=1e-12)


@pytest.mark.parametrize('kwargs', [
    {'shorthand': 'xy'},
    {'shorthand': 'xx', 'theta_a': 0.1, 'phi_a': 0.1, 'theta_b': 0.1, 'phi_b': 0.1},
    {'theta_a': 0.1, 'phi_a': 0.2},
    {'theta_a': float('nan'), 'phi_a': 0.1, 'theta_b': 0.1, 'phi_b': 0.1},
])
def test_invalid_config(kwargs):
    with pytest.raises(ValidationError):
        ValidationService.validate_config(**kwargs)


def test_parameter_list():
    assert ValidationService.validate_parameter_list('rho3', [0.0, 0.5]) == [0.0, 0.5]
    with pytest.raises(ValidationError):
        ValidationService.validate_parameter_list('rho3', [])
    with pytest.raises(ValidationError):
        ValidationService.validate_parameter_list('rho3', [0.5, 1.01])


def test_x_steps_and_time_axis():
    assert ValidationService.validate_x_steps(2) == 2
    with pytest.raises(ValidationError):
        ValidationService.validate_x_steps(1)
    with pytest.raises(ValidationError):
        ValidationService.validate_time_axis(-1.0, 10)
    with pytest.raises(ValidationError):
        ValidationService.validate_time_axis(math.pi, 1)


def test_survey_config():
    config = ValidationService.validate_survey_config({'samples': 10, 'seed': 3, 'shards': None})
    assert config.shards == 1 and config.opt_budget == 200
    with pytest.raises(ValidationError) as info:
        ValidationService.validate_survey_config({'samples': 0, 'seed': 3})
    assert '--samples' in info.value.message
    with pytest.raises(ValidationError):
        ValidationService.validate_survey_config({'samples': 5, 'seed': 3, 'max_terms': 20})


def test_survey_seed_spans_unsigned_64_bits():
    config = ValidationService.validate_survey_config({'samples': 1, 'seed': 2 ** 64 - 1})
    assert config.seed == 2 ** 64 - 1
    with pytest.raises(ValidationError) as info:
        ValidationService.validate_survey_config({'samples': 1, 'seed': 2 ** 64})
    assert '--seed' in info.value.message
    with pytest.raises(ValidationError):
        ValidationService.validate_survey_config({'samples': 1, 'seed': -1})
