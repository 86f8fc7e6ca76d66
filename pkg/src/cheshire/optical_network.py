"""Element-by-element simulation of the post-selection verification network.

The apparatus checks, with linear optics and six detectors, whether a
two-photon state lies on the equal-weight member of the routed
wave/particle family.  Its beam line:

* a beam splitter plus mode switch on photon 1's four modes, placed in the
  L1 arm only, converting that arm's particle state into the wave state
  (and the same pair for photon 2 in the R2 arm);
* path routing that merges |R1 L2> into a single rail |R> and |L1 R2> into
  |L>, diverting the never-populated combinations |R1 R2> and |L1 L2> to
  detectors D1 and D2;
* wave filters on each photon's modes that transmit only the wave state,
  reflecting the rest onto detectors D3 and D4;
* a final beam splitter on the merged rail followed by detectors D5 (port
  R) and D6 (port L).

On the target state D5 fires with certainty; away from it the "yes"
probability drops to the squared overlap with the target.

Elements are symbolic and reference spaces by name; :func:`simulate`
resolves them against a declared space list, so the same engine runs both
the built-in network and circuits read from text files.  Projector splits
are tracked as recorded detector probabilities, never as stochastic
collapse, so a run is deterministic and conserves total probability.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .qstate import (
    Operator,
    ShapeError,
    SpaceLabel,
    StateVector,
    apply,
    embed,
    identity,
    make_basis_state,
    projector_onto,
)
from .wp_states import MODES1, MODES2, PATH1, PATH2, WpParams, make_wave

#: The single rail the two path factors merge into.
MERGED_PATH = SpaceLabel("path", ("R", "L"))


# ---------------------------------------------------------------------------
# Operator factories


def beam_splitter(space: SpaceLabel, label_a: str, label_b: str,
                  convention: str = "paper") -> Operator:
    """Couple two basis labels: |a> -> (|a>+|b>)/sqrt2, |b> -> (|a>-|b>)/sqrt2.

    The asymmetric (+, -) Hadamard convention is the only one supported;
    the network's particle-to-wave conversion algebra holds only in it.
    """
    if convention != "paper":
        raise ValueError(f"unknown beam splitter convention {convention!r}")
    ia, ib = space.index_of(label_a), space.index_of(label_b)
    if ia == ib:
        raise ValueError(f"beam splitter needs two distinct labels, got {label_a!r} twice")
    m = np.eye(space.dim, dtype=np.complex128)
    r = 1.0 / np.sqrt(2.0)
    m[ia, ia], m[ib, ia] = r, r
    m[ia, ib], m[ib, ib] = r, -r
    op = Operator((space,), m)
    if not op.is_unitary():
        raise ValueError("beam splitter construction produced a non-unitary matrix")
    return op


def bs_24(convention: str = "paper", space: SpaceLabel = MODES1) -> Operator:
    """The four-mode beam splitter coupling modes 2 and 4 (labels 1 and 3)."""
    return beam_splitter(space, space.basis_labels[1], space.basis_labels[3], convention)


def sigma1234(space: SpaceLabel = MODES1) -> Operator:
    """Mode switch on a four-mode space: swaps labels 0<->1 and 2<->3."""
    if space.dim != 4:
        raise ShapeError(f"mode switch needs a 4-dimensional space, got dim {space.dim}")
    m = np.zeros((4, 4), dtype=np.complex128)
    m[0, 1] = m[1, 0] = m[2, 3] = m[3, 2] = 1.0
    op = Operator((space,), m)
    if not op.is_unitary():
        raise ValueError("mode switch construction produced a non-unitary matrix")
    return op


def bs5() -> Operator:
    """The final beam splitter on the merged rail: R -> (R+L)/sqrt2, L -> (R-L)/sqrt2."""
    return beam_splitter(MERGED_PATH, "R", "L")


def wave_filter(phi: float, space: SpaceLabel = MODES1) -> tuple[Operator, Operator]:
    """(transmit, reflect) projector pair: transmit = |W(phi)><W(phi)|."""
    transmit = projector_onto(make_wave(phi, space))
    reflect = identity((space,)) - transmit
    return transmit, reflect


# ---------------------------------------------------------------------------
# Circuit elements (symbolic; spaces referenced by name)


@dataclass(frozen=True)
class BeamSplitter:
    space: str
    couple: tuple[str, str]
    convention: str = "paper"
    #: Optional (space, label) arm condition; the element acts only on that branch.
    when: tuple[str, str] | None = None


@dataclass(frozen=True)
class ModeSwitch:
    space: str
    when: tuple[str, str] | None = None


@dataclass(frozen=True)
class WaveFilter:
    """Projective split on one four-mode factor.

    Each port is either ``"next"`` (the beam continues) or
    ``"detector:NAME"`` (the component's probability is recorded there).
    At most one port may continue.
    """

    space: str
    phi: float
    transmit_to: str = "next"
    reflect_to: str = "next"

    def __post_init__(self) -> None:
        for port in (self.transmit_to, self.reflect_to):
            _check_port(port)
        if self.transmit_to == "next" and self.reflect_to == "next":
            raise ValueError("a wave filter cannot route both ports to 'next'")


@dataclass(frozen=True)
class PathMerge:
    """Route two path factors onto one rail, leaking unmapped combinations.

    ``mapping`` sends product labels ``(a, b)`` of the two source spaces to
    distinct labels of ``into``.  Every unmapped combination, enumerated
    row-major over the source bases, pairs with one ``leak_to`` detector
    port.  The merged factor takes the first position of the resulting
    space order.
    """

    spaces: tuple[str, str]
    into: str
    mapping: tuple[tuple[tuple[str, str], str], ...]
    leak_to: tuple[str, ...]

    def __post_init__(self) -> None:
        targets = [t for _, t in self.mapping]
        if len(set(targets)) != len(targets):
            raise ValueError(f"merge targets are not distinct: {targets}")
        for port in self.leak_to:
            _check_port(port, allow_next=False)


@dataclass(frozen=True)
class Detector:
    name: str
    space: str
    label: str


Element = BeamSplitter | ModeSwitch | WaveFilter | PathMerge | Detector


def _check_port(port: str, allow_next: bool = True) -> None:
    if port == "next":
        if not allow_next:
            raise ValueError("this port must name a detector")
        return
    if not port.startswith("detector:") or len(port) <= len("detector:"):
        raise ValueError(f"bad port {port!r}: expected 'next' or 'detector:NAME'")


def _port_detector(port: str) -> str | None:
    return port.removeprefix("detector:") if port.startswith("detector:") else None


def element_name(el: Element) -> str:
    """Deterministic trace name for an element."""
    if isinstance(el, BeamSplitter):
        cond = f"|{el.when[0]}={el.when[1]}" if el.when else ""
        return f"bs[{el.space}{cond}]"
    if isinstance(el, ModeSwitch):
        cond = f"|{el.when[0]}={el.when[1]}" if el.when else ""
        return f"switch1234[{el.space}{cond}]"
    if isinstance(el, WaveFilter):
        return f"wavefilter[{el.space}]"
    if isinstance(el, PathMerge):
        return f"merge[{el.spaces[0]},{el.spaces[1]}->{el.into}]"
    if isinstance(el, Detector):
        return f"detector[{el.name}]"
    raise TypeError(f"unknown element {el!r}")


@dataclass(frozen=True)
class Circuit:
    """Declared spaces plus the ordered element list acting on them."""

    spaces: tuple[SpaceLabel, ...]
    elements: tuple[Element, ...]

    def space(self, name: str) -> SpaceLabel:
        for s in self.spaces:
            if s.name == name:
                return s
        raise ShapeError(f"space {name!r} is not declared by this circuit")

    def detector_names(self) -> list[str]:
        """All detector names, in sorted order."""
        names: set[str] = set()
        for el in self.elements:
            if isinstance(el, Detector):
                names.add(el.name)
            elif isinstance(el, WaveFilter):
                for port in (el.transmit_to, el.reflect_to):
                    det = _port_detector(port)
                    if det:
                        names.add(det)
            elif isinstance(el, PathMerge):
                for port in el.leak_to:
                    det = _port_detector(port)
                    if det:
                        names.add(det)
        return sorted(names)


@dataclass(frozen=True)
class TraceEntry:
    element: str
    norm_after: float


@dataclass(frozen=True)
class DetectionResult:
    """Detector probabilities, the undetected remainder, and the norm trace."""

    detector_probs: dict[str, float]
    surviving_state: StateVector
    trace: tuple[TraceEntry, ...] = field(default=())

    def trace_jsonl(self) -> str:
        """One JSON object per line: {"element": ..., "norm_after": ...}."""
        return "\n".join(
            json.dumps({"element": t.element, "norm_after": t.norm_after})
            for t in self.trace
        )


# ---------------------------------------------------------------------------
# Simulation engine


def _conditional(cond_space: SpaceLabel, label: str, op: Operator) -> Operator:
    """Apply ``op`` only on the ``label`` branch of ``cond_space``."""
    d = op.dim
    p = np.zeros((cond_space.dim, cond_space.dim), dtype=np.complex128)
    p[cond_space.index_of(label), cond_space.index_of(label)] = 1.0
    q = np.eye(cond_space.dim) - p
    matrix = np.kron(p, op.matrix) + np.kron(q, np.eye(d))
    return Operator((cond_space, *op.space), matrix)


def _unitary_for(circuit: Circuit, el: BeamSplitter | ModeSwitch) -> Operator:
    space = circuit.space(el.space)
    if isinstance(el, BeamSplitter):
        op = beam_splitter(space, el.couple[0], el.couple[1], el.convention)
    else:
        op = sigma1234(space)
    if el.when is not None:
        op = _conditional(circuit.space(el.when[0]), el.when[1], op)
    return op


def _apply_merge(
    el: PathMerge, circuit: Circuit, state: StateVector
) -> tuple[StateVector, list[tuple[str, float]]]:
    space_a, space_b = (circuit.space(n) for n in el.spaces)
    into = circuit.space(el.into)
    names = [f.name for f in state.space]
    try:
        ia, ib = names.index(space_a.name), names.index(space_b.name)
    except ValueError:
        raise ShapeError(
            f"merge sources {el.spaces} not present in state space {names}"
        ) from None

    mapped = {pair: tgt for pair, tgt in el.mapping}
    unmapped = [
        (a, b)
        for a in space_a.basis_labels
        for b in space_b.basis_labels
        if (a, b) not in mapped
    ]
    if len(el.leak_to) != len(unmapped):
        raise ShapeError(
            f"merge needs {len(unmapped)} leak ports for {unmapped}, got {len(el.leak_to)}"
        )

    dims = [f.dim for f in state.space]
    x = np.moveaxis(state.amplitudes.reshape(dims), (ia, ib), (0, 1))
    rest_shape = x.shape[2:]
    out = np.zeros((into.dim, *rest_shape), dtype=np.complex128)
    for (la, lb), target in mapped.items():
        out[into.index_of(target)] = x[space_a.index_of(la), space_b.index_of(lb)]
    emissions = []
    for (la, lb), port in zip(unmapped, el.leak_to):
        block = x[space_a.index_of(la), space_b.index_of(lb)]
        emissions.append((_port_detector(port), float(np.vdot(block, block).real)))

    rest = tuple(f for k, f in enumerate(state.space) if k not in (ia, ib))
    return StateVector((into, *rest), out.reshape(-1)), emissions


def _apply_filter(
    el: WaveFilter, circuit: Circuit, state: StateVector
) -> tuple[StateVector, list[tuple[str, float]]]:
    space = circuit.space(el.space)
    transmit, _ = wave_filter(el.phi, space)
    t_state = apply(embed(transmit, state.space), state)
    r_state = state - t_state
    beam = None
    emissions = []
    for port, part in ((el.transmit_to, t_state), (el.reflect_to, r_state)):
        det = _port_detector(port)
        if det is None:
            beam = part
        else:
            emissions.append((det, part.norm() ** 2))
    if beam is None:
        beam = 0.0 * state
    return beam, emissions


def _apply_detector(
    el: Detector, circuit: Circuit, state: StateVector
) -> tuple[StateVector, list[tuple[str, float]]]:
    space = circuit.space(el.space)
    proj = embed(projector_onto(make_basis_state((space,), [el.label])), state.space)
    hit = apply(proj, state)
    return state - hit, [(el.name, hit.norm() ** 2)]


def simulate(circuit: Circuit, input_state: StateVector) -> DetectionResult:
    """Propagate ``input_state`` through the circuit's elements in order."""
    declared = {s.name: s for s in circuit.spaces}
    for factor in input_state.space:
        if declared.get(factor.name) != factor:
            raise ShapeError(
                f"input factor {factor.name!r} is not declared by the circuit"
            )

    state = input_state
    probs = {name: 0.0 for name in circuit.detector_names()}
    trace: list[TraceEntry] = []
    for el in circuit.elements:
        if isinstance(el, (BeamSplitter, ModeSwitch)):
            op = _unitary_for(circuit, el)
            state = apply(embed(op, state.space), state)
            emissions: list[tuple[str, float]] = []
        elif isinstance(el, WaveFilter):
            state, emissions = _apply_filter(el, circuit, state)
        elif isinstance(el, PathMerge):
            state, emissions = _apply_merge(el, circuit, state)
        elif isinstance(el, Detector):
            state, emissions = _apply_detector(el, circuit, state)
        else:
            raise TypeError(f"unknown element {el!r}")
        for det, p in emissions:
            probs[det] = probs.get(det, 0.0) + p
        trace.append(TraceEntry(element_name(el), state.norm()))
    return DetectionResult(detector_probs=probs, surviving_state=state, trace=tuple(trace))


# ---------------------------------------------------------------------------
# The built-in verification network


def merge_paths() -> PathMerge:
    """The network's routing step: |R1 L2> -> |R>, |L1 R2> -> |L>.

    The combinations |L1 L2> and |R1 R2> leak to detectors D2 and D1; on
    intended inputs both carry no amplitude.
    """
    return PathMerge(
        spaces=("path1", "path2"),
        into="path",
        mapping=((("R1", "L2"), "R"), (("L1", "R2"), "L")),
        leak_to=("detector:D2", "detector:D1"),
    )


def build_verification_circuit(params: WpParams) -> Circuit:
    """The full six-detector network for the given toolbox phases."""
    m1, m2 = MODES1.basis_labels, MODES2.basis_labels
    elements: tuple[Element, ...] = (
        BeamSplitter("modes1", (m1[1], m1[3]), when=("path1", "L1")),
        ModeSwitch("modes1", when=("path1", "L1")),
        BeamSplitter("modes2", (m2[1], m2[3]), when=("path2", "R2")),
        ModeSwitch("modes2", when=("path2", "R2")),
        merge_paths(),
        WaveFilter("modes1", params.phi1, "next", "detector:D3"),
        WaveFilter("modes2", params.phi1p, "next", "detector:D4"),
        BeamSplitter("path", ("R", "L")),
        Detector("D5", "path", "R"),
        Detector("D6", "path", "L"),
    )
    return Circuit(spaces=(PATH1, PATH2, MODES1, MODES2, MERGED_PATH), elements=elements)


def run_postselection_pipeline(input_state: StateVector, params: WpParams) -> DetectionResult:
    """Simulate the verification network on a mode-representation state."""
    return simulate(build_verification_circuit(params), input_state)
