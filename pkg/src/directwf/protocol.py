"""Qubit-pointer coupling and the probabilities it induces.

The interaction at position x rotates the pointer conditioned on the system
occupying |x>: pointer |0> goes to cos(theta)|0> + sin(theta)|1> and |1> to
-sin(theta)|0> + cos(theta)|1>, while every other position is untouched.
Projecting the coupled state onto the momentum-zero system state leaves a
sub-normalized pointer state; its squared overlaps with the six reference
pointer states are joint probabilities of (momentum-zero, pointer outcome)
events and need no renormalization. Dividing them by the post-selection
probability gives the conditional probabilities seen inside the
post-selected ensemble.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields

import numpy as np

from .errors import (
    DegenerateAngleError,
    IndexOutOfRangeError,
    ZeroPostSelectionError,
)
from .states import (
    JointState,
    SystemState,
    UnnormalizedPointerState,
    pointer_basis,
)

SIN_THETA_FLOOR = 1e-9
POSTSELECTION_FLOOR = 1e-300

_RANGE_TOL = 1e-12

_POINTER_VECTORS = {
    label: pointer_basis(label).amplitudes
    for label in ("plus", "minus", "zero", "one", "L", "R")
}


@dataclass(frozen=True)
class CouplingStrength:
    """Pointer rotation angle theta in radians, restricted to [0, pi].

    The endpoints are allowed for limit studies; operations that invert
    probabilities into amplitudes call require_invertible() first.
    """

    theta: float

    def __post_init__(self) -> None:
        theta = float(self.theta)
        if not (math.isfinite(theta) and 0.0 <= theta <= math.pi):
            raise ValueError(f"theta must lie in [0, pi], got {self.theta!r}")
        object.__setattr__(self, "theta", theta)

    @classmethod
    def coerce(cls, value: CouplingStrength | float) -> CouplingStrength:
        return value if isinstance(value, cls) else cls(float(value))

    @property
    def sin(self) -> float:
        return math.sin(self.theta)

    @property
    def cos(self) -> float:
        return math.cos(self.theta)

    @property
    def tan_half(self) -> float:
        return math.tan(0.5 * self.theta)

    def require_invertible(self) -> None:
        """Reject angles where the probability-to-amplitude map is singular."""
        if self.sin <= SIN_THETA_FLOOR or abs(self.theta - math.pi) <= SIN_THETA_FLOOR:
            raise DegenerateAngleError(
                f"theta={self.theta!r}: sin(theta) vanishes or theta sits at the"
                " tan(theta/2) pole"
            )


@dataclass(frozen=True)
class ProbabilitySet:
    """The six joint probabilities measured at one coupling position.

    For exact sets the three basis pair sums p_plus+p_minus, p_zero+p_one and
    p_L+p_R all equal the post-selection probability. Sampled sets estimate
    each basis from independent counts, so the pair sums agree only in
    expectation; construction therefore checks the [0, 1] range of each entry
    but not the cross-basis sums.
    """

    p_plus: float
    p_minus: float
    p_zero: float
    p_one: float
    p_L: float
    p_R: float

    def __post_init__(self) -> None:
        for field in fields(self):
            value = float(getattr(self, field.name))
            if not -_RANGE_TOL <= value <= 1.0 + _RANGE_TOL:
                raise ValueError(f"{field.name}={value!r} outside [0, 1]")
            object.__setattr__(self, field.name, value)

    @property
    def postselection(self) -> float:
        """Post-selection probability, taken from the plus/minus pair sum."""
        return self.p_plus + self.p_minus


def apply_coupling(psi: SystemState, x: int, strength: CouplingStrength | float) -> JointState:
    """Couple the pointer to position x of psi.

    The update touches only the two amplitudes of the x block: position x
    acquires the rotated pointer pair (psi_x cos(theta), psi_x sin(theta)),
    every other position keeps pointer |0>. The result has unit norm.
    """
    strength = CouplingStrength.coerce(strength)
    d = psi.dim
    if not 0 <= x < d:
        raise IndexOutOfRangeError(f"position {x} outside [0, {d})")
    joint = np.zeros(2 * d, dtype=np.complex128)
    joint[0::2] = psi.amplitudes
    joint[2 * x] = psi.amplitudes[x] * strength.cos
    joint[2 * x + 1] = psi.amplitudes[x] * strength.sin
    return JointState(joint)


def pointer_collapse(joint: JointState) -> UnnormalizedPointerState:
    """Pointer amplitudes left after projecting the system onto momentum zero.

    Component p equals (1/sqrt(d)) * sum_x joint[(x, p)]; the squared norm of
    the result is the post-selection probability.
    """
    phi = joint.position_matrix().sum(axis=0) / math.sqrt(joint.dim)
    return UnnormalizedPointerState(phi)


def joint_probabilities(joint: JointState) -> ProbabilitySet:
    """Joint probabilities of momentum zero together with each pointer outcome."""
    phi = pointer_collapse(joint).amplitudes

    def prob(label: str) -> float:
        amp = np.vdot(_POINTER_VECTORS[label], phi)
        return amp.real * amp.real + amp.imag * amp.imag

    return ProbabilitySet(
        p_plus=prob("plus"),
        p_minus=prob("minus"),
        p_zero=prob("zero"),
        p_one=prob("one"),
        p_L=prob("L"),
        p_R=prob("R"),
    )


def conditional_probabilities(probs: ProbabilitySet) -> ProbabilitySet:
    """Divide every joint entry by the post-selection probability (Bayes' rule)."""
    total = probs.postselection
    if total < POSTSELECTION_FLOOR:
        raise ZeroPostSelectionError(
            f"post-selection probability {total!r} is numerically zero"
        )
    return ProbabilitySet(
        p_plus=probs.p_plus / total,
        p_minus=probs.p_minus / total,
        p_zero=probs.p_zero / total,
        p_one=probs.p_one / total,
        p_L=probs.p_L / total,
        p_R=probs.p_R / total,
    )


def postselection_probability(joint: JointState) -> float:
    """Probability of finding the system in the momentum-zero state."""
    phi = pointer_collapse(joint).amplitudes
    return float(np.vdot(phi, phi).real)
