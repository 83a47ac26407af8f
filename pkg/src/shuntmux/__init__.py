"""Optimal shunt resistances for amplitude-multiplexed series detector arrays."""

from .circuit import (
    ArraySpec,
    CircuitParams,
    DetectorElement,
    SwitchingState,
    detector_resistance,
    effective_admittance,
    measured_output,
    output_voltage,
    resistance_resolution,
    series_resistance,
    total_voltage,
)
from .classes import OUT_OF_SCOPE, ApplicationMode, ClassLabel, ModeKind, class_count, classify, in_scope_states
from .designer import (
    DesignRequest,
    DesignResult,
    design,
    design_coincidence,
    design_full,
    design_pixel,
    design_pnr,
    feasibility_limit,
    level_sequence,
    two_photon_closed_form,
)
from .errors import (
    AmbiguousDesign,
    EnumerationBoundError,
    Infeasible,
    InfeasibleLevel,
    NotSupported,
    OutOfRange,
)
from .verifier import DecodeResult, VerificationReport, decode, simulate, verify

__version__ = "0.1.0"
