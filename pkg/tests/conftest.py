import math
import os

os.environ.setdefault('ENVIRONMENT', 'testing')

import numpy as np
import pytest

from qspeedlab.models import DensityMatrix, MagnetConfig
from qspeedlab.services import StateService


@pytest.fixture
def xx():
    return MagnetConfig.from_angles(math.pi / 2, 0.0, math.pi / 2, 0.0)


@pytest.fixture
def z_minus_z():
    return MagnetConfig.from_angles(0.0, 0.0, math.pi, 0.0)


@pytest.fixture
def family():
    """Build a family state: family('werner', 0.4)."""
    def build(name, param):
        return StateService.build_family({'family': name, 'param': param})
    return build


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def random_pure_amps(rng):
    amps = rng.normal(size=4) + 1j * rng.normal(size=4)
    return amps / np.linalg.norm(amps)


def random_mixed_state(rng, rank=4):
    g = rng.normal(size=(4, rank)) + 1j * rng.normal(size=(4, rank))
    mat = g @ g.conj().T
    mat = mat / np.trace(mat).real
    return DensityMatrix(mat=0.5 * (mat + mat.conj().T))


def random_config(rng):
    return MagnetConfig.from_angles(math.acos(rng.uniform(-1, 1)), rng.uniform(0, 2 * math.pi),
                                    math.acos(rng.uniform(-1, 1)), rng.uniform(0, 2 * math.pi))
