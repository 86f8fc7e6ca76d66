"""Dense complex linear algebra over small labeled tensor-product spaces.

Every state and operator carries an explicit ordered tuple of tensor
factors (:class:`SpaceLabel`).  Flat indices run row-major over that
order: with factors of dimensions ``(d0, d1, ...)``, the basis state
picked by per-factor indices ``(i0, i1, ...)`` sits at flat index
``i0*d1*d2*... + i1*d2*... + ...``.  This convention is fixed; nothing
else in the package may assume a different ordering.

All values are immutable after construction and all operations are pure,
so everything here is safe to share across threads.  Spaces stay tiny
(at most a few dozen dimensions), hence plain dense ``numpy`` arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Tolerance for exactness checks (normalization, unitarity, idempotence).
ATOL = 1e-12


class LabelError(ValueError):
    """A basis label was used that its space does not declare."""


class ShapeError(ValueError):
    """Spaces, dimensions or factor lists of the operands do not line up."""


class NormalizationError(ValueError):
    """A state that must be normalized is not."""


@dataclass(frozen=True)
class SpaceLabel:
    """One tensor factor: a name plus an ordered basis of distinct labels."""

    name: str
    basis_labels: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "basis_labels", tuple(self.basis_labels))
        if len(self.basis_labels) < 1:
            raise ShapeError(f"space {self.name!r} needs at least one basis label")
        if len(set(self.basis_labels)) != len(self.basis_labels):
            raise LabelError(f"space {self.name!r} has duplicate basis labels")

    @property
    def dim(self) -> int:
        return len(self.basis_labels)

    def index_of(self, label: str) -> int:
        try:
            return self.basis_labels.index(label)
        except ValueError:
            raise LabelError(
                f"label {label!r} is not in space {self.name!r} "
                f"(has {list(self.basis_labels)})"
            ) from None


def _as_space(space) -> tuple[SpaceLabel, ...]:
    factors = tuple(space)
    names = [f.name for f in factors]
    if len(set(names)) != len(names):
        raise ShapeError(f"duplicate factor names in space {names}")
    return factors


def _total_dim(space: tuple[SpaceLabel, ...]) -> int:
    return math.prod(f.dim for f in space)


def require_same_space(a: tuple[SpaceLabel, ...], b: tuple[SpaceLabel, ...]) -> None:
    """Raise :class:`ShapeError` unless the two factor tuples are identical."""
    if a != b:
        raise ShapeError(
            f"space mismatch: {[f.name for f in a]} vs {[f.name for f in b]}"
        )


@dataclass(frozen=True, eq=False)
class StateVector:
    """Complex amplitudes over the row-major product basis of ``space``."""

    space: tuple[SpaceLabel, ...]
    amplitudes: np.ndarray

    def __post_init__(self) -> None:
        space = _as_space(self.space)
        amps = np.array(self.amplitudes, dtype=np.complex128).reshape(-1)
        if amps.shape[0] != _total_dim(space):
            raise ShapeError(
                f"amplitude length {amps.shape[0]} does not match "
                f"space dimension {_total_dim(space)}"
            )
        amps.setflags(write=False)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "amplitudes", amps)

    @property
    def dim(self) -> int:
        return int(self.amplitudes.shape[0])

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    @property
    def is_normalized(self) -> bool:
        """True when ``|<s|s> - 1| <= ATOL``."""
        return abs(self.norm() ** 2 - 1.0) <= ATOL

    def index_of(self, labels) -> int:
        """Flat row-major index of the product basis label combination."""
        labels = tuple(labels)
        if len(labels) != len(self.space):
            raise ShapeError(
                f"need {len(self.space)} labels, got {len(labels)}"
            )
        idx = 0
        for factor, label in zip(self.space, labels):
            idx = idx * factor.dim + factor.index_of(label)
        return idx

    def amplitude(self, labels) -> complex:
        return complex(self.amplitudes[self.index_of(labels)])

    def __add__(self, other: "StateVector") -> "StateVector":
        require_same_space(self.space, other.space)
        return StateVector(self.space, self.amplitudes + other.amplitudes)

    def __sub__(self, other: "StateVector") -> "StateVector":
        require_same_space(self.space, other.space)
        return StateVector(self.space, self.amplitudes - other.amplitudes)

    def __mul__(self, scalar: complex) -> "StateVector":
        return StateVector(self.space, self.amplitudes * scalar)

    __rmul__ = __mul__

    def to_json_dict(self) -> dict:
        """Debug form: space declarations plus [re, im] amplitude pairs."""
        return {
            "space": [
                {"name": f.name, "labels": list(f.basis_labels)} for f in self.space
            ],
            "amplitudes": [[float(a.real), float(a.imag)] for a in self.amplitudes],
        }

    def __repr__(self) -> str:
        names = "x".join(f.name for f in self.space)
        return f"StateVector({names}, dim={self.dim}, norm={self.norm():.6g})"


@dataclass(frozen=True, eq=False)
class Operator:
    """Complex square matrix over the row-major product basis of ``space``."""

    space: tuple[SpaceLabel, ...]
    matrix: np.ndarray

    def __post_init__(self) -> None:
        space = _as_space(self.space)
        d = _total_dim(space)
        mat = np.array(self.matrix, dtype=np.complex128)
        if mat.shape != (d, d):
            raise ShapeError(f"matrix shape {mat.shape} does not match space dimension {d}")
        mat.setflags(write=False)
        object.__setattr__(self, "space", space)
        object.__setattr__(self, "matrix", mat)

    @property
    def dim(self) -> int:
        return int(self.matrix.shape[0])

    def adjoint(self) -> "Operator":
        return Operator(self.space, self.matrix.conj().T)

    def trace(self) -> complex:
        return complex(np.trace(self.matrix))

    def is_hermitian(self, tol: float = ATOL) -> bool:
        return bool(np.max(np.abs(self.matrix - self.matrix.conj().T)) <= tol)

    def is_unitary(self, tol: float = ATOL) -> bool:
        d = self.dim
        return bool(
            np.max(np.abs(self.matrix.conj().T @ self.matrix - np.eye(d))) <= tol
        )

    def is_projector(self, tol: float = ATOL) -> bool:
        idem = np.max(np.abs(self.matrix @ self.matrix - self.matrix)) <= tol
        return bool(idem) and self.is_hermitian(tol)

    def __add__(self, other: "Operator") -> "Operator":
        require_same_space(self.space, other.space)
        return Operator(self.space, self.matrix + other.matrix)

    def __sub__(self, other: "Operator") -> "Operator":
        require_same_space(self.space, other.space)
        return Operator(self.space, self.matrix - other.matrix)

    def __mul__(self, scalar: complex) -> "Operator":
        return Operator(self.space, self.matrix * scalar)

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Operator):
            require_same_space(self.space, other.space)
            return Operator(self.space, self.matrix @ other.matrix)
        if isinstance(other, StateVector):
            return apply(self, other)
        return NotImplemented

    def __repr__(self) -> str:
        names = "x".join(f.name for f in self.space)
        return f"Operator({names}, dim={self.dim})"


def make_basis_state(space, labels) -> StateVector:
    """Unit vector on the product basis state picked by one label per factor."""
    factors = _as_space(space)
    labels = tuple(labels)
    if len(labels) != len(factors):
        raise ShapeError(f"need {len(factors)} labels, got {len(labels)}")
    amps = np.zeros(_total_dim(factors), dtype=np.complex128)
    state = StateVector(factors, amps)
    idx = state.index_of(labels)
    amps[idx] = 1.0
    return StateVector(factors, amps)


def tensor(a: StateVector, b: StateVector) -> StateVector:
    """Kronecker product; the factor list is the concatenation of both."""
    return StateVector(a.space + b.space, np.kron(a.amplitudes, b.amplitudes))


def inner(a: StateVector, b: StateVector) -> complex:
    """``<a|b>``, conjugate-linear in ``a`` and linear in ``b``."""
    require_same_space(a.space, b.space)
    return complex(np.vdot(a.amplitudes, b.amplitudes))


def apply(op: Operator, s: StateVector) -> StateVector:
    require_same_space(op.space, s.space)
    return StateVector(s.space, op.matrix @ s.amplitudes)


def identity(space) -> Operator:
    factors = _as_space(space)
    return Operator(factors, np.eye(_total_dim(factors), dtype=np.complex128))


def projector_onto(s: StateVector) -> Operator:
    """Rank-1 projector ``|s><s|``; ``s`` must be normalized."""
    if not s.is_normalized:
        raise NormalizationError(f"cannot project onto state with norm {s.norm()!r}")
    return Operator(s.space, np.outer(s.amplitudes, s.amplitudes.conj()))


def embed(op: Operator, full_space) -> Operator:
    """Extend ``op`` with identity factors so it acts on ``full_space``.

    The factors of ``op`` must appear in ``full_space`` (any order and
    position); the result's row-major indexing follows ``full_space``.
    """
    full = _as_space(full_space)
    full_names = {f.name: f for f in full}
    for f in op.space:
        if f.name not in full_names:
            raise ShapeError(f"factor {f.name!r} not present in the target space")
        if full_names[f.name] != f:
            raise ShapeError(f"factor {f.name!r} differs between operator and target space")
    op_names = {f.name for f in op.space}
    missing = tuple(f for f in full if f.name not in op_names)

    big = np.kron(op.matrix, np.eye(_total_dim(missing), dtype=np.complex128))
    current = op.space + missing
    if current == full:
        return Operator(full, big)

    # Permute tensor slots from (op factors, identity factors) to full order.
    dims = [f.dim for f in current]
    n = len(dims)
    perm = [current.index(f) for f in full]
    axes = perm + [n + p for p in perm]
    d = _total_dim(full)
    matrix = big.reshape(dims + dims).transpose(axes).reshape(d, d)
    return Operator(full, matrix)
