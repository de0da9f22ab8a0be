"""Entanglement trapping of two independent qubits at a photonic band edge."""

from .band_edge import (
    AmplitudeSeries,
    BandEdgeRoots,
    DegenerateDetuningError,
    PhysicalParams,
    RootConditioningError,
    amplitude_q,
    amplitude_series,
    beta_from_physical,
    compute_roots,
    excited_population,
    steady_amplitude_sq,
)
from .complex_special import erfc_complex, erfcx_scaled, principal_cbrt, principal_sqrt
from .dynamics import (
    BellLikeState,
    InvalidStateError,
    build_bell_like,
    evolve_single_qubit,
    evolve_two_qubit,
    validate_density_matrix,
)
from .entanglement import (
    asymptotic_concurrence,
    concurrence,
    concurrence_phi_closed,
    concurrence_psi_closed,
    esd_threshold,
)
from .oracle_bath import BathDiscretization, compare_to_analytic, discretize_bath, oracle_amplitude

__version__ = "0.1.0"
