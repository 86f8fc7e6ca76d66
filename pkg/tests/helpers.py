"""Shared random-object builders for the test suite."""

import numpy as np

from cheshire.qstate import Operator, SpaceLabel, StateVector


def random_state(space, rng) -> StateVector:
    """Haar-ish random unit vector over the given factor tuple."""
    space = tuple(space)
    d = int(np.prod([f.dim for f in space]))
    v = rng.normal(size=d) + 1j * rng.normal(size=d)
    return StateVector(space, v / np.linalg.norm(v))


def random_hermitian(space, rng) -> Operator:
    space = tuple(space)
    d = int(np.prod([f.dim for f in space]))
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    return Operator(space, (a + a.conj().T) / 2)


def random_unitary(space, rng) -> Operator:
    space = tuple(space)
    d = int(np.prod([f.dim for f in space]))
    a = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    q, r = np.linalg.qr(a)
    # fix the phase ambiguity so columns are well-conditioned
    q = q @ np.diag(np.diag(r) / np.abs(np.diag(r)))
    return Operator(space, q)


def random_projector(space, rng, rank: int | None = None) -> Operator:
    """Projector onto a random subspace (random rank unless given)."""
    space = tuple(space)
    d = int(np.prod([f.dim for f in space]))
    if rank is None:
        rank = int(rng.integers(1, d))
    u = random_unitary(space, rng).matrix[:, :rank]
    return Operator(space, u @ u.conj().T)


def two_level(name: str, labels=("a", "b")) -> SpaceLabel:
    return SpaceLabel(name, tuple(labels))
