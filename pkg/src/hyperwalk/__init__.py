"""Polarization-controlled quantum walk in position and frequency space.

A single photon's polarization acts as the coin; polarizing beam splitters
shift its path and an electro-optic modulator on the H arm shifts its
frequency. The package simulates the walk, computes marginal distributions
and entanglement between the three degrees of freedom, and lays out the
corresponding optical netlist.
"""
__version__ = "0.1.0"

from .entanglement import (
    DensityMatrix,
    NegativityReport,
    Subsystem,
    negativity,
    negativity_curve,
    negativity_of,
    partial_transpose,
    reduced_density_matrix,
    schmidt_rank_vector,
    trace_norm,
)
from .eigen import hermitian_eigenvalues
from .errors import (
    ConfigurationError,
    ConvergenceError,
    HyperwalkError,
    InvariantViolation,
    NotHermitianError,
    StateError,
)
from .netlist import Netlist, build_netlist, detector_frequency_table, emit
from .observables import (
    Distribution,
    TaggingResult,
    frequency_distribution,
    joint_distribution,
    position_distribution,
    tagging_map,
)
from .qstate import (
    BasisLabel,
    Polarization,
    SparseState,
    basis_state,
    initial_coin_state,
    initial_photon_state,
    inner_product,
    label,
    norm,
)
from .walk import (
    CoinSchedule,
    StepVariant,
    WalkConfig,
    apply_baseline_shift,
    apply_baseline_shift_inverse,
    apply_coin,
    apply_frequency_shift,
    apply_position_shift,
    evolve,
    step,
)
