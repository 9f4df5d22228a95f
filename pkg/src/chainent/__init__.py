"""Block entanglement entropy of 1D spin-1/2 chain ground states.

XY chains are handled exactly in the thermodynamic limit through the Majorana
correlation matrix of a block (:mod:`chainent.xy_exact`); finite XXZ rings go
through sector-resolved Lanczos diagonalization (:mod:`chainent.ed_engine`).
"""

from .errors import (
    ChainEntError,
    ConvergenceError,
    CorrelationMatrixInvalidError,
    DegenerateGroundStateError,
    DimensionError,
    NumericalError,
    NumericalSingularityError,
    ToleranceNotMetError,
)
from .profiles import EntropyProfile
from .spectra import (
    MajorizationReport,
    ProbabilitySpectrum,
    binary_entropy,
    effective_rank,
    majorization_compare,
    reduced_spectrum_full,
    reduced_spectrum_topk,
    shannon_entropy,
)
from .xy_exact import (
    BlockCorrelationMatrix,
    CouplingSequence,
    ModeOccupations,
    XYModel,
    block_correlation,
    block_entropy,
    coupling_coefficients,
    entropy_profile,
    half_chain_entropy,
    mode_occupations,
)
from .ed_engine import (
    GroundState,
    XXZModel,
    apply_hamiltonian,
    entropy_profile_ed,
    ground_state,
    reduced_density_matrix,
)
from .scaling import (
    SaturationEstimate,
    ScalingFit,
    fit_central_charge,
    gamma_subleading,
    increment_ratio,
    saturation_analysis,
)

__version__ = "0.1.0"
