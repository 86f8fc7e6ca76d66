"""The single-photon quantum Cheshire cat baseline scenario.

A photon inside a two-arm interferometer is pre-selected in
``(i|L> + |R>)|H> / sqrt(2)`` and post-selected in
``(|L>|H> + |R>|V>) / sqrt(2)``.  The weak values of the arm projectors
and of the arm-resolved circular polarization then split cleanly: the
photon's position registers entirely in the left arm while its circular
polarization registers entirely in the right arm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .qstate import (
    Operator,
    SpaceLabel,
    StateVector,
    embed,
    make_basis_state,
    projector_onto,
    tensor,
)
from .weakvalue import PrePostPair, WeakValueReport, weak_value_table

PATH = SpaceLabel("path", ("L", "R"))
POL = SpaceLabel("pol", ("H", "V"))

_SQRT2 = math.sqrt(2.0)


def circular_polarization() -> Operator:
    """The circular polarization observable in the {H, V} basis.

    Built as ``|up_y><up_y| - |down_y><down_y|`` with
    ``|up_y> = (|H> + i|V>)/sqrt(2)`` and ``|down_y> = (|H> - i|V>)/sqrt(2)``,
    which works out to ``[[0, -i], [i, 0]]``.  That is the Pauli-Y matrix in
    this basis; the scenario's weak values depend on exactly this form, so do
    not "correct" it to Pauli-Z.
    """
    up = StateVector((POL,), [1.0 / _SQRT2, 1j / _SQRT2])
    down = StateVector((POL,), [1.0 / _SQRT2, -1j / _SQRT2])
    return projector_onto(up) - projector_onto(down)


@dataclass(frozen=True)
class QccScenario:
    """Selection pair and the four named observables of the baseline scenario."""

    space: tuple[SpaceLabel, SpaceLabel]
    pair: PrePostPair
    observables: tuple[tuple[str, Operator], ...]


def build_qcc_scenario() -> QccScenario:
    space = (PATH, POL)

    arm = StateVector((PATH,), [1j / _SQRT2, 1.0 / _SQRT2])
    pre = tensor(arm, make_basis_state((POL,), ["H"]))
    post = (1.0 / _SQRT2) * (
        make_basis_state(space, ["L", "H"]) + make_basis_state(space, ["R", "V"])
    )

    proj_l = embed(projector_onto(make_basis_state((PATH,), ["L"])), space)
    proj_r = embed(projector_onto(make_basis_state((PATH,), ["R"])), space)
    sigma = embed(circular_polarization(), space)
    observables = (
        ("Pi_L", proj_l),
        ("Pi_R", proj_r),
        ("sigma_z_L", sigma @ proj_l),
        ("sigma_z_R", sigma @ proj_r),
    )
    return QccScenario(space=space, pair=PrePostPair(pre, post), observables=observables)


#: The exact weak values the scenario must reproduce.
QCC_EXPECTED = {
    "Pi_L": 1.0,
    "Pi_R": 0.0,
    "sigma_z_L": 0.0,
    "sigma_z_R": 1.0,
}


def qcc_weak_values() -> list[WeakValueReport]:
    """The four weak values (Pi_L, Pi_R, sigma_z_L, sigma_z_R) = (1, 0, 0, 1)."""
    scenario = build_qcc_scenario()
    return weak_value_table(scenario.pair, scenario.observables)
