"""Symmetric 1-to-2 qubit cloning machines and B92 eavesdropping analysis.

The package models a family of symmetric cloning machines parameterized by
apparatus inner products (zeta, eta, kappa), checks which parameter triples
are realizable by a unitary, synthesizes explicit machines, optimizes the
family for main-circle inputs, and quantifies what each machine buys an
eavesdropper on the B92 key-distribution protocol, analytically and by
seeded Monte Carlo simulation.
"""

from .qcore import (
    DensityMatrix,
    PureQubit,
    StateVector,
    bloch_state,
    fidelity,
    ket,
    main_circle_state,
    partial_trace,
    pure_density,
    tensor,
    to_density,
)
from .machines import (
    BHParams,
    BUILTIN_MACHINES,
    CloneOutput,
    CloningSpec,
    ValidationReport,
    builtin_spec,
    channel_spec,
    clone,
    feasible,
    fidelity_closed_form,
    gram_matrix,
    load_spec,
    meridional_fidelity_general,
    meridional_spec,
    reduced_output_closed_form,
    save_spec,
    synthesize,
    validate_unitarity,
    wootters_zurek_spec,
)
from .optimizer import (
    OptimizationResult,
    average_fidelity,
    average_fidelity_quadrature,
    optimize_average,
    optimize_equal_fidelity,
    scan_feasible_region,
)
from .b92 import (
    AttackAnalysis,
    B92Pair,
    POVMTriple,
    ProtocolRun,
    attack_analysis,
    b92_pair,
    info_curve,
    outcome_probs,
    povm,
    simulate_protocol,
)

__version__ = "0.1.0"

__all__ = [
    "AttackAnalysis",
    "B92Pair",
    "BHParams",
    "BUILTIN_MACHINES",
    "CloneOutput",
    "CloningSpec",
    "DensityMatrix",
    "OptimizationResult",
    "POVMTriple",
    "ProtocolRun",
    "PureQubit",
    "StateVector",
    "ValidationReport",
    "attack_analysis",
    "average_fidelity",
    "average_fidelity_quadrature",
    "b92_pair",
    "bloch_state",
    "builtin_spec",
    "channel_spec",
    "clone",
    "feasible",
    "fidelity",
    "fidelity_closed_form",
    "gram_matrix",
    "info_curve",
    "ket",
    "load_spec",
    "main_circle_state",
    "meridional_fidelity_general",
    "meridional_spec",
    "optimize_average",
    "optimize_equal_fidelity",
    "outcome_probs",
    "partial_trace",
    "povm",
    "pure_density",
    "reduced_output_closed_form",
    "save_spec",
    "scan_feasible_region",
    "simulate_protocol",
    "synthesize",
    "tensor",
    "to_density",
    "validate_unitarity",
    "wootters_zurek_spec",
]
