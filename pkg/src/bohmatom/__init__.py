"""Spin-dependent Bohm trajectories for Pauli and Dirac hydrogen eigenstates.

Evaluate n <= 2 eigenstates, their spin-dependent probability currents and
Bohmian velocity fields, integrate the (circular) electron trajectories,
and cross-check the closed-form angular rotation rates against independent
numerical oracles.
"""

from .dynamics import (
    Frame,
    FrameVector,
    RateReport,
    RateSource,
    SpinVector,
    angular_factor,
    dirac_current,
    dirac_density,
    dirac_rate,
    dirac_rate_nonrel_limit,
    pauli_rate_assembled,
    pauli_rate_closed_form,
    pauli_velocity,
    pauli_velocity_a,
    pauli_velocity_b,
    rate,
    spin_vector,
)
from .errors import (
    AxisSingularity,
    BohmAtomError,
    DegenerateFit,
    DomainError,
    GuardZone,
    InvalidQuantumNumbers,
    NodeSingularity,
    NotASpinEigenstate,
    PoleError,
    ProjectionError,
    SingularityEncountered,
    StepSizeTooCoarse,
    UnsupportedState,
    ZeroRate,
)
from .params import ALPHA_FS, ModelParams
from .states import (
    Coupling,
    DiracAngular,
    QuantumNumbers,
    SphericalPoint,
    Spinor2,
    delta_ratio,
    dirac_angular_eval,
    enumerate_states,
    is_spin_eigenstate,
    pauli_eval,
    validate_qn,
)
from .trajectories import (
    CircularityReport,
    Trajectory,
    TrajectorySample,
    circularity_report,
    integrate,
    period,
)
from .verify import (
    CheckResult,
    OracleConfig,
    check_divergence,
    check_normalization,
    limit_convergence,
    oracle_dirac_current,
    oracle_pauli_current,
    oracle_spin_reduction,
    run_all,
)

__version__ = "0.1.0"
