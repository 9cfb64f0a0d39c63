"""Inversion of joint probabilities into complex amplitudes.

Each position contributes one linear combination of its six joint
probabilities. That combination is proportional to the amplitude at the
coupled position with an x-independent prefactor, so the prefactor is fixed
afterwards by imposing unit norm, and the leftover global phase is fixed by
making the amplitude sum real and nonnegative. The method is singular when
the amplitude sum of the state vanishes; that case is reported as
VanishingTildePsiError instead of returning garbage.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionTooSmallError, VanishingTildePsiError
from .protocol import (
    CouplingStrength,
    ProbabilitySet,
    apply_coupling,
    joint_probabilities,
)
from .states import SystemState

RAW_NORM_FLOOR = 1e-9


def sampled_raw_norm_floor(shots_per_setting: float, d: int) -> float:
    """Noise-aware floor for the raw-vector norm: three sigma of shot noise."""
    return 3.0 * math.sqrt(6.0 / (shots_per_setting * d))


@dataclass(frozen=True, eq=False)
class RawEstimate:
    """Per-position inversion output before normalization."""

    per_x: np.ndarray
    theta: CouplingStrength
    dim: int

    def __post_init__(self) -> None:
        per_x = np.array(self.per_x, dtype=np.complex128)
        per_x.setflags(write=False)
        if per_x.ndim != 1 or per_x.size != self.dim:
            raise ValueError("raw estimate must hold one complex value per position")
        object.__setattr__(self, "per_x", per_x)
        object.__setattr__(self, "dim", int(self.dim))


@dataclass(frozen=True, eq=False)
class ReconstructionResult:
    """Reconstructed state plus diagnostics.

    shots_used is "exact" for noiseless pipelines, otherwise the per-setting
    shot counts ordered by (position, basis).
    """

    estimate: SystemState
    raw: RawEstimate
    tilde_psi_magnitude: float
    postselection_probability: float
    shots_used: tuple[int, ...] | str

    def __post_init__(self) -> None:
        object.__setattr__(self, "tilde_psi_magnitude", float(self.tilde_psi_magnitude))
        object.__setattr__(
            self, "postselection_probability", float(self.postselection_probability)
        )


def raw_amplitude(probs: ProbabilitySet, strength: CouplingStrength | float) -> complex:
    """Linear combination of one position's joint probabilities.

    Affine in every entry; fed exact probabilities it is proportional to the
    amplitude at the coupled position, with a prefactor common to all x.
    """
    strength = CouplingStrength.coerce(strength)
    strength.require_invertible()
    real = probs.p_plus - probs.p_minus + 2.0 * probs.p_one * strength.tan_half
    return complex(real, probs.p_L - probs.p_R)


def reconstruct(
    probsets,
    strength: CouplingStrength | float,
    *,
    raw_norm_floor: float = RAW_NORM_FLOOR,
) -> ReconstructionResult:
    """Invert one probability set per position into a normalized state.

    Parameters
    ----------
    probsets : sequence of ProbabilitySet, one per position in order
    strength : coupling angle used when the probabilities were produced
    raw_norm_floor : reject the inversion when the unnormalized estimate
        vector is this short; callers with shot noise should widen it
        (see sampled_raw_norm_floor).

    The recovered magnitude of the amplitude sum comes from the prefactor
    identity: the raw vector norm equals (2/d) * |sum_x psi_x| * sin(theta).
    """
    strength = CouplingStrength.coerce(strength)
    strength.require_invertible()
    probsets = list(probsets)
    d = len(probsets)
    if d < 2:
        raise DimensionTooSmallError(f"need probability sets for d >= 2 positions, got {d}")
    raw = np.array([raw_amplitude(p, strength) for p in probsets], dtype=np.complex128)
    norm = float(np.linalg.norm(raw))
    if norm <= raw_norm_floor:
        raise VanishingTildePsiError(
            f"raw estimate norm {norm:.3e} at or below floor {raw_norm_floor:.3e};"
            " the amplitude sum of the state is too close to zero to invert"
        )
    estimate = raw / norm
    total = estimate.sum()
    if total != 0:
        estimate = estimate * (total.conjugate() / abs(total))
    postselection = sum(p.postselection for p in probsets) / d
    return ReconstructionResult(
        estimate=SystemState(estimate),
        raw=RawEstimate(per_x=raw, theta=strength, dim=d),
        tilde_psi_magnitude=d * norm / (2.0 * strength.sin),
        postselection_probability=postselection,
        shots_used="exact",
    )


def reconstruct_exact(
    psi: SystemState,
    strength: CouplingStrength | float,
    *,
    raw_norm_floor: float = RAW_NORM_FLOOR,
) -> ReconstructionResult:
    """Couple at every position, read off exact probabilities, and invert.

    Round-trips any state whose amplitude sum is well away from zero: the
    estimate matches the input up to global phase at double precision.
    """
    strength = CouplingStrength.coerce(strength)
    strength.require_invertible()
    probsets = [
        joint_probabilities(apply_coupling(psi, x, strength)) for x in range(psi.dim)
    ]
    return reconstruct(probsets, strength, raw_norm_floor=raw_norm_floor)
