"""
Domain models for the evolution lab.

Value types are immutable pydantic models; matrix-valued fields hold complex128
numpy arrays in the fixed |00>, |01>, |10>, |11> basis with qubit a leftmost.
"""

import math
from enum import Enum
from typing import Literal, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

from .config.rules import FAMILY_RANGES, SAMPLER_TERMS_RANGE, TOLERANCES

FamilyName = Literal['werner', 'gisin', 'rho3', 'product_mixture', 'pure_phi', 'pure_ent']
BellKind = Literal['phi+', 'phi-', 'psi+', 'psi-']

TWO_PI = 2.0 * math.pi


class ArrayModel(BaseModel):
    """Base for frozen models carrying numpy arrays."""
    model_config = ConfigDict(arbitrary_types_allowed=True, frozen=True)


class DensityMatrix(ArrayModel):
    """State of the two-spin system."""
    mat: np.ndarray

    @field_validator('mat', mode='before')
    @classmethod
    def _check_state(cls, value):
        mat = np.array(value, dtype=np.complex128)
        if mat.shape != (4, 4):
            raise ValueError(f"density matrix must be 4x4, got shape {mat.shape}")
        if not np.all(np.isfinite(mat)):
            raise ValueError("density matrix has non-finite entries")
        if np.max(np.abs(mat - mat.conj().T)) > TOLERANCES['HERMITIAN']:
            raise ValueError("density matrix is not Hermitian")
        trace = np.trace(mat).real
        if abs(trace - 1.0) > TOLERANCES['TRACE']:
            raise ValueError(f"density matrix trace is {trace}, expected 1")
        lowest = np.linalg.eigvalsh(0.5 * (mat + mat.conj().T))[0]
        if lowest < -TOLERANCES['PSD_CLAMP']:
            raise ValueError(f"density matrix has negative eigenvalue {lowest:.3e}")
        mat.setflags(write=False)
        return mat

    @property
    def purity(self) -> float:
        return float(np.real(np.trace(self.mat @ self.mat)))


class PureState(ArrayModel):
    """Normalized two-qubit state vector."""
    amps: np.ndarray

    @field_validator('amps', mode='before')
    @classmethod
    def _check_norm(cls, value):
        amps = np.array(value, dtype=np.complex128).reshape(-1)
        if amps.shape != (4,):
            raise ValueError(f"pure state needs 4 amplitudes, got {amps.shape[0]}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("pure state has non-finite amplitudes")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > TOLERANCES['UNIT_NORM']:
            raise ValueError(f"pure state norm is {norm}, expected 1")
        amps.setflags(write=False)
        return amps

    def density(self) -> DensityMatrix:
        return DensityMatrix(mat=np.outer(self.amps, self.amps.conj()))


class FamilySpec(BaseModel):
    """Named parametric state family with its mixing weight, amplitude or angle."""
    model_config = ConfigDict(frozen=True)

    family: FamilyName
    param: float

    @model_validator(mode='after')
    def _check_range(self):
        low, high = FAMILY_RANGES[self.family]
        if not (low <= self.param <= high) or not math.isfinite(self.param):
            raise ValueError(f"{self.family} parameter {self.param} outside [{low}, {high}]")
        return self


class SeparableSample(BaseModel):
    """One draw of the separable-state sampler."""
    model_config = ConfigDict(frozen=True)

    state: DensityMatrix
    num_terms: int = Field(ge=SAMPLER_TERMS_RANGE[0], le=SAMPLER_TERMS_RANGE[1])
    seed_tag: int


class BlochDirection(BaseModel):
    """Field axis given by polar angle theta in [0, pi] and azimuth phi in [0, 2pi)."""
    model_config = ConfigDict(frozen=True)

    theta: float = Field(ge=0.0, le=math.pi)
    phi: float = Field(ge=0.0, lt=TWO_PI)

    @classmethod
    def canonical(cls, theta: float, phi: float) -> 'BlochDirection':
        """Fold arbitrary real angles onto the same axis with theta in [0, pi], phi in [0, 2pi)."""
        theta = math.fmod(theta, TWO_PI)
        if theta < 0.0:
            theta += TWO_PI
        if theta > math.pi:
            theta = TWO_PI - theta
            phi += math.pi
        phi = math.fmod(phi, TWO_PI)
        if phi < 0.0:
            phi += TWO_PI
        if phi >= TWO_PI:
            phi = 0.0
        return cls(theta=min(max(theta, 0.0), math.pi), phi=phi + 0.0)

    @property
    def vector(self) -> np.ndarray:
        return np.array([
            math.sin(self.theta) * math.cos(self.phi),
            math.sin(self.theta) * math.sin(self.phi),
            math.cos(self.theta),
        ])


class MagnetConfig(BaseModel):
    """Pair of field directions, one per spin."""
    model_config = ConfigDict(frozen=True)

    dir_a: BlochDirection
    dir_b: BlochDirection

    @classmethod
    def from_angles(cls, theta_a: float, phi_a: float, theta_b: float, phi_b: float) -> 'MagnetConfig':
        return cls(dir_a=BlochDirection.canonical(theta_a, phi_a),
                   dir_b=BlochDirection.canonical(theta_b, phi_b))

    def angles(self) -> Tuple[float, float, float, float]:
        return (self.dir_a.theta, self.dir_a.phi, self.dir_b.theta, self.dir_b.phi)


class EnergyMoments(BaseModel):
    model_config = ConfigDict(frozen=True)

    mean: float
    variance: float = Field(ge=0.0)


class KickoffResult(BaseModel):
    """Short-time decay coefficient 1/tau^2; tau_sq is None for a stationary state."""
    model_config = ConfigDict(frozen=True)

    rate: float = Field(ge=0.0)
    tau_sq: Optional[float] = None

    @property
    def stationary(self) -> bool:
        return self.tau_sq is None


class TimeSeries(ArrayModel):
    times: np.ndarray
    values: np.ndarray

    @model_validator(mode='after')
    def _check_series(self):
        if self.times.shape != self.values.shape:
            raise ValueError("times and values differ in length")
        if self.times.size > 1 and np.any(np.diff(self.times) <= 0):
            raise ValueError("times must be strictly ascending")
        return self


class MeasureReport(BaseModel):
    model_config = ConfigDict(frozen=True)

    concurrence: float
    entropy_ab: float
    entropy_a: float
    entropy_b: float
    mutual_info: float
    separable: bool


class Objective(str, Enum):
    KICKOFF = 'kickoff'
    PERIOD_DDIF = 'period_ddif'
    MAX_DISTANCE = 'max_distance'


class OptimizationResult(BaseModel):
    model_config = ConfigDict(frozen=True)

    config: MagnetConfig
    value: float
    evaluations: int


class SurveyConfig(BaseModel):
    model_config = ConfigDict(frozen=True)

    samples: int = Field(ge=1)
    seed: int = Field(ge=0, lt=2 ** 64)
    shards: int = Field(default=1, ge=1)
    opt_budget: int = Field(default=200, ge=1)
    max_terms: int = Field(default=8, ge=SAMPLER_TERMS_RANGE[0], le=SAMPLER_TERMS_RANGE[1])
    workers: int = Field(default=1, ge=1)


class SurveyRecord(BaseModel):
    model_config = ConfigDict(frozen=True)

    seed: int
    index: int
    num_terms: int
    mutual_info: float
    entropy_ab: float
    entropy_a: float
    entropy_b: float
    d_quarter: float
    d_half: float
    d_dif: float
    theta_a: float
    phi_a: float
    theta_b: float
    phi_b: float


class SurveySummary(BaseModel):
    model_config = ConfigDict(frozen=True)

    count: int
    mean_x: float
    median_x: float
    std_x: float
    mean_y: float
    median_y: float
    std_y: float
    max_d_quarter: float


class CommandSpec(BaseModel):
    """Validated command-line request handed from the parser to a command handler."""
    model_config = ConfigDict(frozen=True)

    command: Literal['fig-kickoff', 'fig-distance', 'fig-product-mixture', 'fig-zaxis',
                     'survey', 'survey-summary', 'compute', 'optimize']
    flags: dict
    out_path: Optional[str] = None


__all__ = [
    'FamilyName', 'BellKind', 'DensityMatrix', 'PureState', 'FamilySpec', 'SeparableSample',
    'BlochDirection', 'MagnetConfig', 'EnergyMoments', 'KickoffResult', 'TimeSeries',
    'MeasureReport', 'Objective', 'OptimizationResult', 'SurveyConfig', 'SurveyRecord',
    'SurveySummary', 'CommandSpec',
]
