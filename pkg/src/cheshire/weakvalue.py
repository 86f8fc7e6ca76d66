"""Weak values of observables for pre- and post-selected state pairs.

For a system prepared in ``pre`` and conditioned on the final state
``post``, the weak value of an observable ``C`` is the complex ratio
``<post|C|pre> / <post|pre>``.  The ratio diverges as the selection
states approach orthogonality, so pairs whose overlap magnitude falls
at or below :data:`EPS_OVERLAP` are refused outright instead of
producing numerically meaningless output.
"""

from __future__ import annotations

from dataclasses import dataclass

from .qstate import (
    NormalizationError,
    Operator,
    StateVector,
    apply,
    inner,
    require_same_space,
)

#: Below this overlap magnitude the selection is treated as orthogonal.
EPS_OVERLAP = 1e-10


class OrthogonalSelectionError(ValueError):
    """Pre- and post-selection are numerically orthogonal; weak value undefined."""


@dataclass(frozen=True)
class PrePostPair:
    """A normalized pre-selected and post-selected state over one space."""

    pre: StateVector
    post: StateVector

    def __post_init__(self) -> None:
        require_same_space(self.pre.space, self.post.space)
        if not self.pre.is_normalized:
            raise NormalizationError("pre-selected state is not normalized")
        if not self.post.is_normalized:
            raise NormalizationError("post-selected state is not normalized")
        if abs(self.overlap) <= EPS_OVERLAP:
            raise OrthogonalSelectionError(
                f"|<post|pre>| = {abs(self.overlap):.3e} <= {EPS_OVERLAP:g}"
            )

    @property
    def overlap(self) -> complex:
        """The post-selection amplitude ``<post|pre>``."""
        return inner(self.post, self.pre)


@dataclass(frozen=True)
class WeakValueReport:
    observable_name: str
    value: complex
    overlap: complex
    success_probability: float


def weak_value(pair: PrePostPair, obs: Operator, name: str = "") -> WeakValueReport:
    """``<post|obs|pre> / <post|pre>`` for the given selection pair."""
    require_same_space(obs.space, pair.pre.space)
    den = pair.overlap
    if abs(den) <= EPS_OVERLAP:
        raise OrthogonalSelectionError(
            f"|<post|pre>| = {abs(den):.3e} <= {EPS_OVERLAP:g}"
        )
    num = inner(pair.post, apply(obs, pair.pre))
    return WeakValueReport(
        observable_name=name,
        value=num / den,
        overlap=den,
        success_probability=abs(den) ** 2,
    )


def weak_value_table(pair: PrePostPair, named_obs) -> list[WeakValueReport]:
    """Evaluate :func:`weak_value` for each ``(name, operator)`` entry in order."""
    reports = []
    for obs_name, obs in named_obs:
        try:
            reports.append(weak_value(pair, obs, name=obs_name))
        except ValueError as exc:
            raise type(exc)(f"{obs_name}: {exc}") from exc
    return reports
