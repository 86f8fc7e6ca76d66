"""Weak-value simulations of quantum Cheshire cat optics.

The package reproduces, with small dense linear algebra, the single-photon
Cheshire cat scenario (position in one interferometer arm, circular
polarization in the other) and the two-photon scheme that spatially
separates the wave and particle attributes of an entangled pair, including
the six-detector optical network that verifies the post-selection.
"""

from .cheshire_single import QccScenario, build_qcc_scenario, qcc_weak_values
from .circuit_parser import CircuitDoc, ParseError, parse_circuit, render_circuit
from .optical_network import (
    Circuit,
    DetectionResult,
    build_verification_circuit,
    run_postselection_pipeline,
    simulate,
)
from .qstate import (
    LabelError,
    NormalizationError,
    Operator,
    ShapeError,
    SpaceLabel,
    StateVector,
    apply,
    embed,
    identity,
    inner,
    make_basis_state,
    projector_onto,
    tensor,
)
from .weakvalue import (
    OrthogonalSelectionError,
    PrePostPair,
    WeakValueReport,
    weak_value,
    weak_value_table,
)
from .wp_states import (
    DomainError,
    WpParams,
    attribute_observable,
    make_input_state,
    make_particle,
    make_postselected,
    make_preselected,
    make_wave,
    separation_weak_values,
)

__all__ = [
    "Circuit",
    "CircuitDoc",
    "DetectionResult",
    "DomainError",
    "LabelError",
    "NormalizationError",
    "Operator",
    "OrthogonalSelectionError",
    "ParseError",
    "PrePostPair",
    "QccScenario",
    "ShapeError",
    "SpaceLabel",
    "StateVector",
    "WeakValueReport",
    "WpParams",
    "apply",
    "attribute_observable",
    "build_qcc_scenario",
    "build_verification_circuit",
    "embed",
    "identity",
    "inner",
    "make_basis_state",
    "make_input_state",
    "make_particle",
    "make_postselected",
    "make_preselected",
    "make_wave",
    "parse_circuit",
    "projector_onto",
    "qcc_weak_values",
    "render_circuit",
    "run_postselection_pipeline",
    "simulate",
    "tensor",
    "weak_value",
    "weak_value_table",
]

__version__ = "0.1.0"
