"""Exact state-vector engine for N two-level emitters on a linear chain.

Basis convention: basis index b encodes the product state in which bit
(l-1) of b is 1 iff emitter l (1-based) is excited.  All amplitudes are
dense complex128 arrays of length 2**N and immutable after construction.

The far-field detection operator is dimensionless: E+(theta) lowers one
emitter with the phase factor exp(-i * l * kd * sin(theta)) attached to
emitter l.  Squared norms of operator images are therefore directly the
(dimensionless) correlation values.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

# 2**20 amplitudes is the largest dense register the engine accepts.
MAX_EXACT_EMITTERS = 20
NORM_TOL = 1e-12


@dataclass(frozen=True)
class EmitterGeometry:
    """Linear chain of emitters with dimensionless spacing kd = (2*pi/lambda)*d."""

    n_emitters: int
    kd: float

    def __post_init__(self):
        if self.n_emitters < 1:
            raise ValueError(f"need at least one emitter, got {self.n_emitters}")
        if not self.kd > 0:
            raise ValueError(f"kd must be positive, got {self.kd}")

    def phase_of(self, emitter: int, theta: float) -> float:
        """Optical phase picked up by a photon from emitter l toward angle theta."""
        if not 1 <= emitter <= self.n_emitters:
            raise ValueError(
                f"emitter index {emitter} outside 1..{self.n_emitters}"
            )
        return emitter * self.kd * math.sin(theta)

    def phases(self, theta: float) -> np.ndarray:
        """Phases of all emitters toward angle theta, as an array of length N."""
        return np.arange(1, self.n_emitters + 1) * (self.kd * math.sin(theta))


@dataclass(frozen=True)
class DetectorList:
    """Ordered detector angles (radians).  Order never affects a G-value."""

    angles: tuple[float, ...]

    def __post_init__(self):
        angles = tuple(float(a) for a in self.angles)
        if len(angles) < 1:
            raise ValueError("need at least one detector")
        object.__setattr__(self, "angles", angles)

    @classmethod
    def coincident(cls, theta1: float, order_m: int, theta2: float) -> "DetectorList":
        """(m-1) detectors stacked at theta1 plus one scanning detector at theta2."""
        if order_m < 1:
            raise ValueError(f"order must be >= 1, got {order_m}")
        return cls((theta1,) * (order_m - 1) + (theta2,))

    def __len__(self) -> int:
        return len(self.angles)

    def __iter__(self):
        return iter(self.angles)


def as_angles(detectors) -> tuple[float, ...]:
    """Accept a DetectorList or any iterable of angles."""
    if isinstance(detectors, DetectorList):
        return detectors.angles
    angles = tuple(float(a) for a in detectors)
    if not angles:
        raise ValueError("need at least one detector")
    return angles


@dataclass(frozen=True)
class StateVector:
    """Dense amplitude vector over the 2**N product basis (immutable)."""

    amplitudes: np.ndarray
    n_emitters: int

    def __post_init__(self):
        n = self.n_emitters
        if not 1 <= n <= MAX_EXACT_EMITTERS:
            raise ValueError(
                f"exact engine handles 1..{MAX_EXACT_EMITTERS} emitters, got {n}"
            )
        amps = np.array(self.amplitudes, dtype=np.complex128, copy=True)
        if amps.shape != (1 << n,):
            raise ValueError(
                f"amplitude vector has shape {amps.shape}, expected ({1 << n},)"
            )
        amps.flags.writeable = False
        object.__setattr__(self, "amplitudes", amps)

    def norm_sq(self) -> float:
        return float(np.vdot(self.amplitudes, self.amplitudes).real)

    def is_normalized(self, tol: float = NORM_TOL) -> bool:
        return abs(self.norm_sq() - 1.0) <= tol

    def normalized(self) -> "StateVector":
        n2 = self.norm_sq()
        if n2 == 0.0:
            raise ValueError("cannot normalize the zero vector")
        return StateVector(self.amplitudes / math.sqrt(n2), self.n_emitters)

    def overlap(self, other: "StateVector") -> complex:
        if other.n_emitters != self.n_emitters:
            raise ValueError("overlap requires equal emitter counts")
        return complex(np.vdot(self.amplitudes, other.amplitudes))


def fully_excited(n_emitters: int) -> StateVector:
    """All emitters excited: the uncorrelated starting state of every scan."""
    if n_emitters < 1:
        raise ValueError(f"need at least one emitter, got {n_emitters}")
    amps = np.zeros(1 << n_emitters, dtype=np.complex128)
    amps[(1 << n_emitters) - 1] = 1.0
    return StateVector(amps, n_emitters)


def two_atom_delta_state(delta: float) -> StateVector:
    """(|e,g> + e^{i delta} |g,e>)/sqrt(2); delta=0 symmetric, delta=pi antisymmetric."""
    amps = np.zeros(4, dtype=np.complex128)
    amps[0b01] = 1.0 / math.sqrt(2.0)          # emitter 1 excited
    amps[0b10] = cmath.exp(1j * delta) / math.sqrt(2.0)  # emitter 2 excited
    return StateVector(amps, 2)


def dicke_state(n_emitters: int, n_ground: int) -> StateVector:
    """Equal-weight superposition of all configurations with n_ground emitters down."""
    if not 0 <= n_ground <= n_emitters:
        raise ValueError(
            f"n_ground must lie in 0..{n_emitters}, got {n_ground}"
        )
    dim = 1 << n_emitters
    n_excited = n_emitters - n_ground
    amp = 1.0 / math.sqrt(math.comb(n_emitters, n_ground))
    amps = np.zeros(dim, dtype=np.complex128)
    for b in range(dim):
        if b.bit_count() == n_excited:
            amps[b] = amp
    return StateVector(amps, n_emitters)


def timed_dicke_state(geometry: EmitterGeometry, theta1: float) -> StateVector:
    """Single de-excitation with detection-direction phase tags on each emitter."""
    n = geometry.n_emitters
    full = (1 << n) - 1
    amps = np.zeros(1 << n, dtype=np.complex128)
    for l in range(1, n + 1):
        amps[full ^ (1 << (l - 1))] = cmath.exp(-1j * geometry.phase_of(l, theta1))
    return StateVector(amps / math.sqrt(n), n)


def apply_field(geometry: EmitterGeometry, theta: float, state: StateVector) -> StateVector:
    """Image of the state under E+(theta); unnormalized, possibly zero.

    The squared norm of the result is the first-order correlation of the
    input state at theta.
    """
    n = state.n_emitters
    if geometry.n_emitters != n:
        raise ValueError("geometry and state disagree on emitter count")
    dim = 1 << n
    idx = np.arange(dim)
    out = np.zeros(dim, dtype=np.complex128)
    amps = state.amplitudes
    for l in range(1, n + 1):
        bit = 1 << (l - 1)
        src = idx[(idx & bit) != 0]
        out[src ^ bit] += cmath.exp(-1j * geometry.phase_of(l, theta)) * amps[src]
    return StateVector(out, n)


def intensity(geometry: EmitterGeometry, theta: float, state: StateVector) -> float:
    """First-order correlation G1(theta) of a normalized state."""
    if not state.is_normalized():
        raise ValueError("intensity requires a normalized state")
    return apply_field(geometry, theta, state).norm_sq()
