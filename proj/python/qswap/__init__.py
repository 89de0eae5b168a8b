"""Exact state-vector simulator for the two-singlet swapping experiments.

The heavy lifting lives in the C++ extension ``qswap._qswap``; this package
just re-exports it.
"""

from ._qswap import (  # noqa: F401
    DEFAULT_SEED,
    BellKind,
    DensityMatrix,
    MeasurementBasis,
    OutcomeRecord,
    SchmidtDecomposition,
    Spin,
    SpinDirection,
    StateVector,
    basis_ket,
    bell_basis,
    bell_decompose_initial,
    bell_state,
    correlator,
    entanglement_entropy,
    equal_up_to_global_phase,
    experiment_json,
    is_product,
    measure,
    mixed_concurrence,
    mixed_from_records,
    monte_carlo_experiment,
    no_signaling_report,
    no_signaling_sweep,
    phase_insensitive_distance,
    pretty_print_protocol,
    product_basis,
    pure_concurrence,
    reduced_density,
    run_experiment_1,
    run_experiment_2,
    run_protocol,
    sample_protocol,
    schmidt,
    singlet,
    spin_basis,
    tensor,
    two_singlet_state,
    validate_protocol,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
