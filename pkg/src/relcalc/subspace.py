"""Orthonormal-basis subspace arithmetic over C^m.

Every subspace is stored as an ``m x d`` matrix with orthonormal columns.
Rank decisions use singular values relative to the largest one, with a
small absolute floor so that an all-noise input collapses to ``{0}``.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DimensionMismatch

DEFAULT_TOL = 1e-10
ABS_FLOOR = 1e-13

__all__ = [
    "DEFAULT_TOL",
    "ABS_FLOOR",
    "Inclusion",
    "Subspace",
    "span",
    "zero",
    "full",
    "sum_",
    "intersect",
    "complement",
    "ominus",
    "lattice",
    "contains",
    "compare",
    "equal",
    "project",
    "distance",
    "null_space",
    "numerical_rank",
]


class Inclusion(enum.Enum):
    EQUAL = "equal"
    A_SUBSET_B = "a_subset_b"
    B_SUBSET_A = "b_subset_a"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace of C^m given by an orthonormal basis.

    Use :func:`span` to build one from arbitrary vectors; the constructor
    trusts that ``basis`` already has orthonormal columns.
    """

    basis: np.ndarray
    tol: float = DEFAULT_TOL

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=complex)
        if b.ndim != 2:
            raise ValueError("basis must be a 2-d array")
        b.setflags(write=False)
        object.__setattr__(self, "basis", b)

    @property
    def ambient_dim(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    def __contains__(self, v) -> bool:
        return contains(self, v)

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"


def _threshold(s: np.ndarray, tol: float) -> float:
    smax = s[0] if s.size else 0.0
    return max(tol * smax, ABS_FLOOR)


def numerical_rank(m: np.ndarray, tol: float = DEFAULT_TOL) -> int:
    """Count singular values above ``max(tol * s_max, ABS_FLOOR)``."""
    m = np.asarray(m)
    if m.size == 0:
        return 0
    s = scipy.linalg.svd(m, compute_uv=False)
    return int(np.sum(s > _threshold(s, tol)))


def null_space(m: np.ndarray, tol: float = DEFAULT_TOL) -> np.ndarray:
    """Orthonormal basis of the right null space of ``m`` (columns)."""
    m = np.asarray(m, dtype=complex)
    rows, cols = m.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=complex)
    if rows == 0:
        return np.eye(cols, dtype=complex)
    _, s, vh = scipy.linalg.svd(m, full_matrices=True)
    rank = int(np.sum(s > _threshold(s, tol)))
    return vh[rank:].conj().T


def _as_matrix(vectors, ambient_dim):
    if isinstance(vectors, np.ndarray) and vectors.ndim == 2:
        mat = vectors.astype(complex)
    else:
        vecs = [np.asarray(v, dtype=complex).ravel() for v in vectors]
        if not vecs:
            if ambient_dim is None:
                raise ValueError("ambient_dim is required for an empty vector list")
            return np.zeros((ambient_dim, 0), dtype=complex)
        lengths = {v.size for v in vecs}
        if len(lengths) != 1:
            raise DimensionMismatch(f"vectors have mixed lengths {sorted(lengths)}")
        mat = np.column_stack(vecs)
    if ambient_dim is not None and mat.shape[0] != ambient_dim:
        raise DimensionMismatch(
            f"vectors have length {mat.shape[0]}, expected {ambient_dim}"
        )
    return mat


def span(vectors, tol: float = DEFAULT_TOL, ambient_dim: int | None = None) -> Subspace:
    """Orthonormal basis of the linear hull of ``vectors``.

    ``vectors`` is a sequence of 1-d arrays or an ``m x k`` matrix whose
    columns are the spanning vectors.
    """
    mat = _as_matrix(vectors, ambient_dim)
    m = mat.shape[0]
    if m < 1:
        raise ValueError("ambient dimension must be at least 1")
    if not np.all(np.isfinite(mat)):
        raise ValueError("non-finite entries in spanning vectors")
    if mat.shape[1] == 0:
        return Subspace(np.zeros((m, 0), dtype=complex), tol)
    u, s, _ = scipy.linalg.svd(mat, full_matrices=False)
    rank = int(np.sum(s > _threshold(s, tol)))
    return Subspace(u[:, :rank], tol)


def zero(m: int, tol: float = DEFAULT_TOL) -> Subspace:
    return Subspace(np.zeros((m, 0), dtype=complex), tol)


def full(m: int, tol: float = DEFAULT_TOL) -> Subspace:
    return Subspace(np.eye(m, dtype=complex), tol)


def _check(a: Subspace, b: Subspace):
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {a.ambient_dim} vs {b.ambient_dim}"
        )
    return max(a.tol, b.tol)


def sum_(a: Subspace, b: Subspace) -> Subspace:
    tol = _check(a, b)
    return span(np.hstack([a.basis, b.basis]), tol)


def complement(a: Subspace) -> Subspace:
    """Orthogonal complement in the ambient space."""
    m, d = a.basis.shape
    if d == 0:
        return full(m, a.tol)
    if d == m:
        return zero(m, a.tol)
    # columns of a.basis are orthonormal, so the trailing columns of a
    # full QR factor span the complement
    q, _ = scipy.linalg.qr(a.basis, mode="full")
    return Subspace(q[:, d:], a.tol)


def _small_directions(a: Subspace, r: np.ndarray, tol: float) -> Subspace:
    """``a.basis @ x`` for the unit ``x`` with ``||r x|| <= tol``."""
    d = a.dim
    if r.shape[0] == 0:
        return Subspace(a.basis, tol)
    _, s, vh = scipy.linalg.svd(r, full_matrices=True)
    s = np.concatenate([s, np.zeros(d - s.size)])
    keep = s <= max(tol, ABS_FLOOR)
    return Subspace(a.basis @ vh[keep].conj().T, tol)


def intersect(a: Subspace, b: Subspace) -> Subspace:
    """Common directions: unit vectors of the smaller space within ``tol`` of the other."""
    tol = _check(a, b)
    if a.dim > b.dim:
        a, b = b, a
    if a.dim == 0:
        return zero(a.ambient_dim, tol)
    resid = a.basis - b.basis @ (b.basis.conj().T @ a.basis)
    return _small_directions(a, resid, tol)


def ominus(a: Subspace, b: Subspace) -> Subspace:
    """``a ⊖ b = a ∩ b^⊥``."""
    tol = _check(a, b)
    if a.dim == 0:
        return zero(a.ambient_dim, tol)
    return _small_directions(a, b.basis.conj().T @ a.basis, tol)


_LATTICE = {
    "sum": sum_,
    "intersect": intersect,
    "ominus": ominus,
}


def lattice(a: Subspace, b: Subspace | None, op: str) -> Subspace:
    """Dispatch to ``sum``, ``intersect``, ``complement`` or ``ominus``."""
    if op == "complement":
        return complement(a)
    try:
        fn = _LATTICE[op]
    except KeyError:
        raise ValueError(f"unknown lattice operation {op!r}") from None
    return fn(a, b)


def project(s: Subspace, v) -> np.ndarray:
    v = np.asarray(v, dtype=complex)
    if v.shape[0] != s.ambient_dim:
        raise DimensionMismatch(f"vector length {v.shape[0]} != {s.ambient_dim}")
    return s.basis @ (s.basis.conj().T @ v)


def contains(s: Subspace, v) -> bool:
    v = np.asarray(v, dtype=complex)
    resid = np.linalg.norm(v - project(s, v))
    return bool(resid <= s.tol * max(1.0, np.linalg.norm(v)))


def _is_subset(a: Subspace, b: Subspace) -> bool:
    if a.dim == 0:
        return True
    if a.dim > b.dim:
        return False
    resid = a.basis - project(b, a.basis)
    tol = max(a.tol, b.tol)
    return bool(np.all(np.linalg.norm(resid, axis=0) <= tol))


def compare(a: Subspace, b: Subspace) -> Inclusion:
    _check(a, b)
    ab = _is_subset(a, b)
    ba = _is_subset(b, a)
    if ab and ba:
        return Inclusion.EQUAL
    if ab:
        return Inclusion.A_SUBSET_B
    if ba:
        return Inclusion.B_SUBSET_A
    return Inclusion.INCOMPARABLE


def equal(a: Subspace, b: Subspace) -> bool:
    return compare(a, b) is Inclusion.EQUAL


def distance(a: Subspace, b: Subspace) -> float:
    """Largest principal angle between ``a`` and ``b``.

    Subspaces of different dimension are at distance ``pi/2``. The sine
    form is used so that tiny angles are resolved to machine precision.
    """
    _check(a, b)
    if a.dim != b.dim:
        return float(np.pi / 2)
    if a.dim == 0:
        return 0.0
    resid = a.basis - project(b, a.basis)
    sin_max = scipy.linalg.svd(resid, compute_uv=False)[0]
    return float(np.arcsin(min(sin_max, 1.0)))
