"""Two-photon wave/particle states and their separation weak values.

An entangled polarization pair ``cos(a)|VV> + sin(a)|HH>`` is converted,
photon by photon, into superpositions of a "wave" state (capable of
interference) and a "particle" state (incapable of it).  Routing the wave
component of photon 1 into arm R1, its particle component into L1, and the
mirror assignment for photon 2 produces the pre-selected family

    cos(a)|R1 L2, W Wp> + sin(a)|L1 R2, P Pp>

whose member at ``a = pi/4`` serves as the post-selected state.  Weak
values of the arm/attribute projectors then place exactly one attribute in
each interferometer arm.

Two equivalent representations are provided.  The attribute form treats
wave/particle as abstract two-level factors (dimension 16 total); the mode
form expands each attribute over four optical output modes (dimension 64).
Weak values computed in one representation must match the other, which the
test suite uses as a cross-check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

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

PATH1 = SpaceLabel("path1", ("L1", "R1"))
PATH2 = SpaceLabel("path2", ("L2", "R2"))
ATTR1 = SpaceLabel("attr1", ("W", "P"))
ATTR2 = SpaceLabel("attr2", ("Wp", "Pp"))
MODES1 = SpaceLabel("modes1", ("1", "2", "3", "4"))
MODES2 = SpaceLabel("modes2", ("1p", "2p", "3p", "4p"))
POL1 = SpaceLabel("pol1", ("H", "V"))
POL2 = SpaceLabel("pol2", ("H", "V"))

ATTRIBUTE_SPACE = (PATH1, PATH2, ATTR1, ATTR2)
MODE_SPACE = (PATH1, PATH2, MODES1, MODES2)

REPRESENTATIONS = ("attribute", "mode")

_SQRT2 = math.sqrt(2.0)


class DomainError(ValueError):
    """An arm/attribute combination or parameter is outside the modeled family."""


@dataclass(frozen=True)
class WpParams:
    """Mixing angle and per-photon toolbox phases, all in radians.

    ``alpha`` controls the wave/particle weighting and is restricted to
    [0, pi/2], the family under study.  ``phi1`` enters photon 1's wave and
    particle states, ``phi1p`` photon 2's; the two further toolbox phases
    that a physical apparatus would expose play no role in any output here
    and are not modeled.
    """

    alpha: float
    phi1: float = 0.0
    phi1p: float = 0.0

    def __post_init__(self) -> None:
        if not 0.0 <= self.alpha <= math.pi / 2:
            raise DomainError(f"alpha = {self.alpha!r} outside [0, pi/2]")


def _check_representation(representation: str) -> None:
    if representation not in REPRESENTATIONS:
        raise ValueError(
            f"representation must be one of {REPRESENTATIONS}, got {representation!r}"
        )


def make_input_state(alpha: float) -> StateVector:
    """The polarization pair ``cos(alpha)|VV> + sin(alpha)|HH>``."""
    space = (POL1, POL2)
    return math.cos(alpha) * make_basis_state(space, ["V", "V"]) + math.sin(
        alpha
    ) * make_basis_state(space, ["H", "H"])


def make_wave(phi: float, space: SpaceLabel = MODES1) -> StateVector:
    """Wave state ``e^{i phi/2} (cos(phi/2)|m0> - i sin(phi/2)|m2>)``.

    ``m0`` and ``m2`` are the first and third basis labels of ``space``
    (modes 1 and 3 of the four-mode factor).
    """
    phase = complex(math.cos(phi / 2), math.sin(phi / 2))
    amps = [phase * math.cos(phi / 2), 0.0, -1j * phase * math.sin(phi / 2), 0.0]
    return StateVector((space,), amps)


def make_particle(phi: float, space: SpaceLabel = MODES1) -> StateVector:
    """Particle state ``(|m1> + e^{i phi}|m3>) / sqrt(2)`` on modes 2 and 4."""
    phase = complex(math.cos(phi), math.sin(phi))
    amps = [0.0, 1.0 / _SQRT2, 0.0, phase / _SQRT2]
    return StateVector((space,), amps)


def _branch(representation: str, params: WpParams, wave: bool) -> StateVector:
    """One routed branch: paths (R1, L2) carrying waves or (L1, R2) carrying particles."""
    if wave:
        paths = ("R1", "L2")
        attr1 = make_wave(params.phi1, MODES1)
        attr2 = make_wave(params.phi1p, MODES2)
        labels = ("W", "Wp")
    else:
        paths = ("L1", "R2")
        attr1 = make_particle(params.phi1, MODES1)
        attr2 = make_particle(params.phi1p, MODES2)
        labels = ("P", "Pp")
    if representation == "attribute":
        return make_basis_state(ATTRIBUTE_SPACE, [paths[0], paths[1], *labels])
    path_part = tensor(
        make_basis_state((PATH1,), [paths[0]]), make_basis_state((PATH2,), [paths[1]])
    )
    return tensor(tensor(path_part, attr1), attr2)


def make_preselected(params: WpParams, representation: str = "attribute") -> StateVector:
    """``cos(alpha)`` on the wave branch plus ``sin(alpha)`` on the particle branch."""
    _check_representation(representation)
    wave = _branch(representation, params, wave=True)
    particle = _branch(representation, params, wave=False)
    return math.cos(params.alpha) * wave + math.sin(params.alpha) * particle


def make_postselected(params: WpParams, representation: str = "attribute") -> StateVector:
    """The equal-weight member of the family, independent of ``params.alpha``."""
    return make_preselected(replace(params, alpha=math.pi / 4), representation)


_ARM_SPACE = {"L1": PATH1, "R1": PATH1, "L2": PATH2, "R2": PATH2}
_ATTR_PHOTON = {"W": 1, "P": 1, "Wp": 2, "Pp": 2}

#: Canonical (attr, arm) listing of the eight arm/attribute projectors.
CANONICAL_OBSERVABLES = (
    ("W", "L1"),
    ("W", "R1"),
    ("P", "L1"),
    ("P", "R1"),
    ("Wp", "L2"),
    ("Wp", "R2"),
    ("Pp", "L2"),
    ("Pp", "R2"),
)


def observable_name(attr: str, arm: str) -> str:
    return f"Pi_{attr}_{arm}"


def attribute_observable(
    arm: str,
    attr: str,
    representation: str = "attribute",
    params: WpParams | None = None,
) -> Operator:
    """Projector asking "is this attribute present in this arm?".

    The attribute must belong to the photon that owns the arm (W/P with
    photon 1's arms L1/R1, Wp/Pp with photon 2's L2/R2).  In the mode
    representation the attribute projector depends on the toolbox phases,
    taken from ``params`` (defaulting to zero phases).
    """
    _check_representation(representation)
    if arm not in _ARM_SPACE:
        raise DomainError(f"unknown arm {arm!r}")
    if attr not in _ATTR_PHOTON:
        raise DomainError(f"unknown attribute {attr!r}")
    photon = 1 if arm in ("L1", "R1") else 2
    if _ATTR_PHOTON[attr] != photon:
        raise DomainError(f"attribute {attr!r} does not belong to photon {photon} (arm {arm!r})")

    path_proj = projector_onto(make_basis_state((_ARM_SPACE[arm],), [arm]))
    if representation == "attribute":
        attr_space = ATTR1 if photon == 1 else ATTR2
        attr_proj = projector_onto(make_basis_state((attr_space,), [attr]))
        full = ATTRIBUTE_SPACE
    else:
        if params is None:
            params = WpParams(alpha=0.0)
        mode_space = MODES1 if photon == 1 else MODES2
        phi = params.phi1 if photon == 1 else params.phi1p
        maker = make_wave if attr in ("W", "Wp") else make_particle
        attr_proj = projector_onto(maker(phi, mode_space))
        full = MODE_SPACE
    return embed(path_proj, full) @ embed(attr_proj, full)


def separation_observables(
    representation: str = "attribute", params: WpParams | None = None
) -> list[tuple[str, Operator]]:
    """All eight named arm/attribute projectors in canonical order."""
    return [
        (observable_name(attr, arm), attribute_observable(arm, attr, representation, params))
        for attr, arm in CANONICAL_OBSERVABLES
    ]


def separation_pair(params: WpParams, representation: str = "attribute") -> PrePostPair:
    return PrePostPair(
        pre=make_preselected(params, representation),
        post=make_postselected(params, representation),
    )


def separation_weak_values(
    params: WpParams, representation: str = "attribute"
) -> list[WeakValueReport]:
    """Weak values of the eight arm/attribute projectors, canonical order.

    Only one attribute per arm comes out nonzero: the wave of photon 1 in
    R1 and of photon 2 in L2 (each ``cos a / (cos a + sin a)``), the
    particle of photon 1 in L1 and of photon 2 in R2 (each
    ``sin a / (cos a + sin a)``).
    """
    pair = separation_pair(params, representation)
    return weak_value_table(pair, separation_observables(representation, params))
