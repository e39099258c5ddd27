"""Trackability analysis and controller synthesis for Boolean control networks.

The package decides whether a network in algebraic form can reproduce a given
finite or periodic reference output sequence, locates every initial state from
which it can, and reads out all admissible open-loop control sequences.
"""

from .fileio import ParseError, load_network, load_reference, parse_network, parse_reference
from .finite import (
    ENUMERATION_LIMIT,
    FiniteTrackingSolution,
    PairTable,
    ReferenceTrajectory,
    SynthesisEnumeration,
    TrackingInfeasible,
    compatible_pairs,
    enumerate_finite,
    forward_masks,
    output_class,
    solve_finite,
    synthesize_finite,
)
from .network import Bcn, StateInputTrajectory
from .periodic import (
    PeriodicReference,
    PeriodicSolution,
    TrackingOrbit,
    check_universal_periodic,
    enumerate_periodic,
    solve_periodic,
    synthesize_periodic,
    trackable_from,
    tracking_orbit,
)
from .stp import (
    BooleanMatrix,
    BooleanVector,
    LogicalMatrix,
    LogicalVector,
    decode_boolean_vector,
    delta_product,
    encode_boolean_vector,
    stp,
    stp_logical,
)

__version__ = "0.1.0"

__all__ = [
    "Bcn",
    "BooleanMatrix",
    "BooleanVector",
    "ENUMERATION_LIMIT",
    "FiniteTrackingSolution",
    "LogicalMatrix",
    "LogicalVector",
    "PairTable",
    "ParseError",
    "PeriodicReference",
    "PeriodicSolution",
    "ReferenceTrajectory",
    "StateInputTrajectory",
    "SynthesisEnumeration",
    "TrackingInfeasible",
    "TrackingOrbit",
    "check_universal_periodic",
    "compatible_pairs",
    "decode_boolean_vector",
    "delta_product",
    "encode_boolean_vector",
    "enumerate_finite",
    "enumerate_periodic",
    "forward_masks",
    "load_network",
    "load_reference",
    "output_class",
    "parse_network",
    "parse_reference",
    "solve_finite",
    "solve_periodic",
    "stp",
    "stp_logical",
    "synthesize_finite",
    "synthesize_periodic",
    "trackable_from",
    "tracking_orbit",
]
