"""Linear relations in C^n, stored as subspaces of C^n ⊕ C^n.

A relation ``T`` is a subspace of ``C^{2n}``; the top ``n`` coordinates of a
graph vector are the argument ``f`` and the bottom ``n`` are the value
``g``. The orthonormal graph basis is split into the two halves ``B1``
(n x d) and ``B2`` (n x d) so that ``T = {(B1 c, B2 c) : c in C^d}``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import subspace as sp
from .errors import DimensionMismatch
from .subspace import DEFAULT_TOL, Inclusion, Subspace

__all__ = [
    "LinearRelation",
    "RelationParts",
    "from_operator",
    "from_pairs",
    "from_basis",
    "zero_relation",
    "full_relation",
    "identity",
    "parts",
    "add",
    "scale",
    "compose",
    "inverse",
    "algebra",
    "adjoint",
    "direct_sum",
    "intersection",
    "decompose",
    "reduce",
    "shift",
    "pencil_line",
    "compare",
    "equal",
    "is_subrelation",
    "distance",
    "operator_matrix",
]


@dataclass(frozen=True, eq=False)
class LinearRelation:
    n: int
    graph: Subspace

    def __post_init__(self):
        if self.graph.ambient_dim != 2 * self.n:
            raise DimensionMismatch(
                f"graph lives in C^{self.graph.ambient_dim}, expected C^{2 * self.n}"
            )

    @property
    def tol(self) -> float:
        return self.graph.tol

    @property
    def dim(self) -> int:
        return self.graph.dim

    @property
    def top(self) -> np.ndarray:
        """``B1``: the argument half of the graph basis."""
        return self.graph.basis[: self.n]

    @property
    def bottom(self) -> np.ndarray:
        """``B2``: the value half of the graph basis."""
        return self.graph.basis[self.n :]

    def __contains__(self, pair) -> bool:
        f, g = pair
        return sp.contains(self.graph, np.concatenate([np.ravel(f), np.ravel(g)]))

    def __repr__(self):
        return f"LinearRelation(n={self.n}, dim={self.dim})"


@dataclass(frozen=True)
class RelationParts:
    dom: Subspace
    ran: Subspace
    ker: Subspace
    mul: Subspace


def _wrap(n, mat, tol):
    return LinearRelation(n, sp.span(mat, tol, ambient_dim=2 * n))


def from_basis(mat, tol: float = DEFAULT_TOL) -> LinearRelation:
    """Relation spanned by the columns of a ``2n x d`` matrix."""
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] % 2:
        raise DimensionMismatch("basis matrix must have an even number of rows")
    return _wrap(mat.shape[0] // 2, mat, tol)


def from_operator(m, tol: float = DEFAULT_TOL) -> LinearRelation:
    """Graph ``{(f, M f)}`` of a square matrix."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise DimensionMismatch(f"operator must be square, got shape {m.shape}")
    if not np.all(np.isfinite(m)):
        raise ValueError("operator has non-finite entries")
    n = m.shape[0]
    return _wrap(n, np.vstack([np.eye(n), m]), tol)


def from_pairs(pairs, tol: float = DEFAULT_TOL, n: int | None = None) -> LinearRelation:
    """Span of the stacked vectors ``(f, g)`` for each pair."""
    cols = []
    for f, g in pairs:
        f = np.asarray(f, dtype=complex).ravel()
        g = np.asarray(g, dtype=complex).ravel()
        if f.size != g.size:
            raise DimensionMismatch(f"pair halves differ in length: {f.size} vs {g.size}")
        if n is None:
            n = f.size
        elif f.size != n:
            raise DimensionMismatch(f"pair of length {f.size}, expected {n}")
        cols.append(np.concatenate([f, g]))
    if n is None:
        raise ValueError("n is required when no pairs are given")
    return _wrap(n, np.column_stack(cols) if cols else np.zeros((2 * n, 0)), tol)


def zero_relation(n: int, tol: float = DEFAULT_TOL) -> LinearRelation:
    return LinearRelation(n, sp.zero(2 * n, tol))


def full_relation(n: int, tol: float = DEFAULT_TOL) -> LinearRelation:
    return LinearRelation(n, sp.full(2 * n, tol))


def identity(n: int, tol: float = DEFAULT_TOL) -> LinearRelation:
    return from_operator(np.eye(n), tol)


def _half(sub: Subspace, n: int, which: str) -> Subspace:
    b = sub.basis[:n] if which == "top" else sub.basis[n:]
    return sp.span(b, sub.tol, ambient_dim=n)


def _embed_top(s: Subspace, n: int) -> Subspace:
    """``s ⊕ {0}`` inside C^{2n}."""
    return Subspace(np.vstack([s.basis, np.zeros_like(s.basis)]), s.tol)


def _embed_bottom(s: Subspace, n: int) -> Subspace:
    """``{0} ⊕ s`` inside C^{2n}."""
    return Subspace(np.vstack([np.zeros_like(s.basis), s.basis]), s.tol)


def parts(t: LinearRelation) -> RelationParts:
    n, tol = t.n, t.tol
    dom = sp.span(t.top, tol, ambient_dim=n)
    ran = sp.span(t.bottom, tol, ambient_dim=n)
    ker = _half(sp.intersect(t.graph, _embed_top(sp.full(n, tol), n)), n, "top")
    mul = _half(sp.intersect(t.graph, _embed_bottom(sp.full(n, tol), n)), n, "bottom")
    return RelationParts(dom=dom, ran=ran, ker=ker, mul=mul)


def _check_pair(t: LinearRelation, s: LinearRelation) -> float:
    if t.n != s.n:
        raise DimensionMismatch(f"relations act in C^{t.n} and C^{s.n}")
    return max(t.tol, s.tol)


def add(t: LinearRelation, s: LinearRelation) -> LinearRelation:
    """``T + S = {(f, g + h) : (f, g) in T, (f, h) in S}``."""
    tol = _check_pair(t, s)
    # coefficient pairs (x, y) whose arguments agree: B1t x = B1s y
    null = sp.null_space(np.hstack([t.top, -s.top]), tol)
    x, y = null[: t.dim], null[t.dim :]
    return _wrap(t.n, np.vstack([t.top @ x, t.bottom @ x + s.bottom @ y]), tol)


def scale(t: LinearRelation, zeta: complex) -> LinearRelation:
    """``zeta T = {(f, zeta g)}``."""
    return _wrap(t.n, np.vstack([t.top, zeta * t.bottom]), t.tol)


def compose(s: LinearRelation, t: LinearRelation) -> LinearRelation:
    """``S T = {(f, k) : (f, g) in T, (g, k) in S}`` (apply ``T`` first)."""
    tol = _check_pair(t, s)
    null = sp.null_space(np.hstack([t.bottom, -s.top]), tol)
    x, y = null[: t.dim], null[t.dim :]
    return _wrap(t.n, np.vstack([t.top @ x, s.bottom @ y]), tol)


def inverse(t: LinearRelation) -> LinearRelation:
    return LinearRelation(t.n, Subspace(np.vstack([t.bottom, t.top]), t.tol))


def algebra(op: str, *args) -> LinearRelation:
    """Dispatch helper: ``add(T, S)``, ``scalar(zeta, T)``, ``compose(S, T)``, ``inverse(T)``."""
    if op == "add":
        return add(*args)
    if op == "scalar":
        zeta, t = args
        return scale(t, zeta)
    if op == "compose":
        return compose(*args)
    if op == "inverse":
        return inverse(*args)
    raise ValueError(f"unknown relation operation {op!r}")


def adjoint(t: LinearRelation) -> LinearRelation:
    """``T* = (-T^{-1})^⊥``: all ``(h, k)`` with ``<k, f> = <h, g>`` on ``T``."""
    rotated = Subspace(np.vstack([t.bottom, -t.top]), t.tol)
    return LinearRelation(t.n, sp.complement(rotated))


def direct_sum(t: LinearRelation, s: LinearRelation) -> LinearRelation:
    """Linear span of the two graphs (``T ∔ S`` when they meet only in 0)."""
    _check_pair(t, s)
    return LinearRelation(t.n, sp.sum_(t.graph, s.graph))


def intersection(t: LinearRelation, s: LinearRelation) -> LinearRelation:
    _check_pair(t, s)
    return LinearRelation(t.n, sp.intersect(t.graph, s.graph))


def decompose(t: LinearRelation) -> tuple[LinearRelation, LinearRelation]:
    """Split ``T = T_op ⊕ T_inf`` into operator and multivalued parts."""
    n, tol = t.n, t.tol
    mv = sp.intersect(t.graph, _embed_bottom(sp.full(n, tol), n))
    op = sp.ominus(t.graph, mv)
    return LinearRelation(n, op), LinearRelation(n, mv)


def reduce(t: LinearRelation, s: LinearRelation) -> LinearRelation:
    """``T_S = T ∩ ((mul S)^⊥ ⊕ (mul S)^⊥)``."""
    tol = _check_pair(t, s)
    perp = sp.complement(parts(s).mul)
    box = Subspace(
        np.block(
            [
                [perp.basis, np.zeros_like(perp.basis)],
                [np.zeros_like(perp.basis), perp.basis],
            ]
        ),
        tol,
    )
    return LinearRelation(t.n, sp.intersect(t.graph, box))


def shift(t: LinearRelation, zeta: complex) -> LinearRelation:
    """``T - zeta I = {(f, g - zeta f)}``."""
    return _wrap(t.n, np.vstack([t.top, t.bottom - zeta * t.top]), t.tol)


def pencil_line(n: int, zeta: complex, tol: float = DEFAULT_TOL) -> LinearRelation:
    """``zeta I = {(f, zeta f)}`` as a relation."""
    return from_pairs(
        [(e, zeta * e) for e in np.eye(n, dtype=complex)], tol=tol, n=n
    )


def compare(a: LinearRelation, b: LinearRelation) -> Inclusion:
    _check_pair(a, b)
    return sp.compare(a.graph, b.graph)


def equal(a: LinearRelation, b: LinearRelation) -> bool:
    return compare(a, b) is Inclusion.EQUAL


def is_subrelation(s: LinearRelation, t: LinearRelation) -> bool:
    """``S ⊆ T``."""
    return compare(s, t) in (Inclusion.EQUAL, Inclusion.A_SUBSET_B)


def distance(a: LinearRelation, b: LinearRelation) -> float:
    _check_pair(a, b)
    return sp.distance(a.graph, b.graph)


def operator_matrix(t: LinearRelation) -> np.ndarray:
    """Matrix ``M`` with ``T = graph(M)``; ``T`` must be an everywhere-defined operator."""
    if t.dim != t.n or sp.numerical_rank(t.top, t.tol) != t.n:
        raise ValueError("relation is not the graph of an everywhere-defined operator")
    return np.linalg.solve(t.top.T, t.bottom.T).T
