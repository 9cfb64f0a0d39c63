"""Direct measurement of a d-dimensional wavefunction with a qubit pointer.

The package simulates the protocol end to end: couple a pointer qubit to one
position at a time, read out joint (momentum-zero, pointer-outcome)
probabilities either exactly or with multinomial shot noise, invert them into
complex amplitudes, and quantify the reconstruction quality across coupling
strengths.
"""

from .errors import (
    DegenerateAngleError,
    DimensionMismatchError,
    DimensionTooSmallError,
    DirectMeasurementError,
    IndexOutOfRangeError,
    InvalidDistributionError,
    UnknownLabelError,
    VanishingTildePsiError,
    ZeroPostSelectionError,
    ZeroVectorError,
)
from .metrics import (
    TrialStatistics,
    fidelity,
    phase_aligned_l2,
    run_trials,
    sampled_reconstruction,
    theta_sweep,
)
from .protocol import (
    CouplingStrength,
    ProbabilitySet,
    apply_coupling,
    conditional_probabilities,
    joint_probabilities,
    pointer_collapse,
    postselection_probability,
)
from .reconstruction import (
    RAW_NORM_FLOOR,
    RawEstimate,
    ReconstructionResult,
    raw_amplitude,
    reconstruct,
    reconstruct_exact,
    sampled_raw_norm_floor,
)
from .sampling import (
    BASES,
    BASIS_OUTCOMES,
    CountTable,
    MeasurementSetting,
    derive_seed,
    estimate_probset,
    measure_probsets,
    outcome_distribution,
    plan_settings,
    sample_counts,
    setting_distributions,
    split_budget,
)
from .states import (
    JointState,
    PointerState,
    SystemState,
    UnnormalizedPointerState,
    fourier_basis,
    inner,
    make_system_state,
    momentum_zero_state,
    pointer_basis,
)

__version__ = "0.1.0"

__all__ = [
    "BASES",
    "BASIS_OUTCOMES",
    "CountTable",
    "CouplingStrength",
    "DegenerateAngleError",
    "DimensionMismatchError",
    "DimensionTooSmallError",
    "DirectMeasurementError",
    "IndexOutOfRangeError",
    "InvalidDistributionError",
    "JointState",
    "MeasurementSetting",
    "PointerState",
    "ProbabilitySet",
    "RAW_NORM_FLOOR",
    "RawEstimate",
    "ReconstructionResult",
    "SystemState",
    "TrialStatistics",
    "UnknownLabelError",
    "UnnormalizedPointerState",
    "VanishingTildePsiError",
    "ZeroPostSelectionError",
    "ZeroVectorError",
    "apply_coupling",
    "conditional_probabilities",
    "derive_seed",
    "estimate_probset",
    "fidelity",
    "fourier_basis",
    "inner",
    "joint_probabilities",
    "make_system_state",
    "measure_probsets",
    "momentum_zero_state",
    "outcome_distribution",
    "phase_aligned_l2",
    "plan_settings",
    "pointer_basis",
    "pointer_collapse",
    "postselection_probability",
    "raw_amplitude",
    "reconstruct",
    "reconstruct_exact",
    "run_trials",
    "sample_counts",
    "sampled_raw_norm_floor",
    "sampled_reconstruction",
    "setting_distributions",
    "split_budget",
    "theta_sweep",
    "__version__",
]
