"""Spectra, resolvents, spectral measures and lacunae of relations.

For a relation with graph basis ``[B1; B2]`` the eigenvalue condition
``(f, lam f) in T`` reads ``B2 c = lam B1 c``, so spectra come from the
matrix pencil ``B2 - lam B1``. Selfadjoint relations are handled through
the Hermitian matrix of their operator part on ``(mul A)^⊥``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
import scipy.linalg

from . import classify
from . import relation as rel
from . import subspace as sp
from .errors import NotInRegularSet, NotSelfadjoint, NotSymmetric
from .relation import LinearRelation

__all__ = [
    "Eigenvalue",
    "SpectrumReport",
    "SpectralMeasure",
    "Interval",
    "IntervalCount",
    "EssentialSpectrum",
    "spectrum",
    "point_spectrum",
    "is_degenerate_pencil",
    "resolvent",
    "is_regular_point",
    "spectral_measure",
    "mu_count",
    "mu_count_detail",
    "is_lacuna",
    "lacuna_radius",
    "essential_spectrum",
]


@dataclass(frozen=True)
class Eigenvalue:
    value: complex
    algebraic: int
    geometric: int


@dataclass(frozen=True)
class SpectrumReport:
    """Finite eigenvalues of the pencil plus the state at infinity.

    ``degenerate`` means the regular set is empty (``sigma(T) = C``); the
    eigenvalue list is then empty.
    """

    eigenvalues: tuple[Eigenvalue, ...]
    infinite_multiplicity: int
    has_infinite_eigenvalue: bool
    degenerate: bool
    tol: float = 1e-10

    @property
    def values(self) -> np.ndarray:
        """Finite eigenvalues repeated by algebraic multiplicity."""
        out = [e.value for e in self.eigenvalues for _ in range(e.algebraic)]
        return np.array(out, dtype=complex)

    @property
    def spectrum_real(self) -> bool:
        if self.degenerate:
            return False
        return all(
            abs(e.value.imag) <= math.sqrt(self.tol) * max(1.0, abs(e.value))
            for e in self.eigenvalues
        )


@dataclass(frozen=True)
class Interval:
    """Open interval ``(alpha, beta)``; endpoints may be infinite."""

    alpha: float
    beta: float

    def __post_init__(self):
        if not self.alpha < self.beta:
            raise ValueError(f"empty interval ({self.alpha}, {self.beta})")

    @classmethod
    def real_line(cls) -> "Interval":
        return cls(-math.inf, math.inf)

    @classmethod
    def around(cls, center: float, radius: float) -> "Interval":
        return cls(center - radius, center + radius)

    @property
    def bounded(self) -> bool:
        return math.isfinite(self.alpha) and math.isfinite(self.beta)

    @property
    def center(self) -> float:
        return (self.alpha + self.beta) / 2

    @property
    def radius(self) -> float:
        return (self.beta - self.alpha) / 2

    def __contains__(self, x) -> bool:
        return self.alpha < x < self.beta

    def band(self, tol: float) -> float:
        ends = [abs(v) for v in (self.alpha, self.beta) if math.isfinite(v)]
        return tol * max([1.0, *ends])


@dataclass(frozen=True)
class IntervalCount:
    count: int
    collisions: tuple[float, ...] = ()


@dataclass(frozen=True, eq=False)
class SpectralMeasure:
    """Eigendecomposition of the operator part ``A_A`` on ``(mul A)^⊥``.

    ``eigenpairs`` holds each distinct eigenvalue with its orthogonal
    eigenprojection, written as an ``n x n`` matrix.
    """

    carrier: sp.Subspace
    hermitian: np.ndarray
    eigenpairs: tuple[tuple[float, np.ndarray], ...]
    tol: float = 1e-10

    @property
    def eigenvalues(self) -> np.ndarray:
        """Eigenvalues repeated by multiplicity, ascending."""
        return np.linalg.eigvalsh(self.hermitian) if self.hermitian.size else np.zeros(0)

    def multiplicities(self) -> list[tuple[float, int]]:
        return [(lam, int(round(np.trace(p).real))) for lam, p in self.eigenpairs]

    def projection(self, delta: Interval) -> np.ndarray:
        n = self.carrier.ambient_dim
        out = np.zeros((n, n), dtype=complex)
        for lam, p in self.eigenpairs:
            if lam in delta:
                out += p
        return out

    def count(self, delta: Interval) -> IntervalCount:
        band = delta.band(self.tol)
        total = 0
        hits = []
        for lam, mult in self.multiplicities():
            if abs(lam - delta.alpha) <= band or abs(lam - delta.beta) <= band:
                hits.append(lam)
            elif lam in delta:
                total += mult
        return IntervalCount(total, tuple(hits))


@dataclass(frozen=True)
class EssentialSpectrum:
    points: frozenset = field(default_factory=frozenset)
    note: str = (
        "finite dimension: the continuous spectrum and the set of eigenvalues "
        "of infinite multiplicity are empty, so the essential spectrum is empty"
    )


def _cluster(values: np.ndarray, tol_fn) -> list[list[complex]]:
    groups: list[list[complex]] = []
    for v in sorted(values, key=lambda z: (z.real, z.imag)):
        for g in groups:
            if abs(v - np.mean(g)) <= tol_fn(v):
                g.append(v)
                break
        else:
            groups.append([v])
    return groups


def _sample_points(k: int) -> np.ndarray:
    # off-axis points on a circle; a nonzero degree <= k-1 polynomial cannot vanish at all of them
    angles = 2 * np.pi * np.arange(k) / k + 0.377
    return 1.3 * np.exp(1j * angles) + 0.11


def is_degenerate_pencil(b2: np.ndarray, b1: np.ndarray, tol: float) -> bool:
    """``det(B2 - lam B1)`` vanishes identically (square pencils only)."""
    n = b1.shape[0]
    for lam in _sample_points(n + 1):
        s = scipy.linalg.svd(b2 - lam * b1, compute_uv=False)
        if s[-1] > tol * max(1.0, abs(lam)) * max(1.0, s[0]):
            return False
    return True


def spectrum(t: LinearRelation) -> SpectrumReport:
    """Eigenvalues of ``B2 - lam B1`` via QZ, with geometric multiplicities."""
    tol = t.tol
    has_inf = rel.parts(t).mul.dim > 0
    if t.dim != t.n:
        return SpectrumReport((), 0, has_inf, True, tol)
    b1, b2 = t.top, t.bottom
    if is_degenerate_pencil(b2, b1, tol):
        return SpectrumReport((), 0, has_inf, True, tol)
    (alpha, beta), _ = scipy.linalg.eig(b2, b1, homogeneous_eigvals=True)
    infinite = np.abs(beta) <= tol * np.abs(alpha)
    finite = alpha[~infinite] / beta[~infinite]
    groups = _cluster(finite, lambda v: math.sqrt(tol) * max(1.0, abs(v)))
    eigs = []
    for g in groups:
        lam = complex(np.mean(g))
        eigs.append(Eigenvalue(lam, len(g), classify.eigenvalue_multiplicity(t, lam)))
    return SpectrumReport(tuple(eigs), int(infinite.sum()), has_inf, False, tol)


def point_spectrum(t: LinearRelation) -> SpectrumReport:
    """Eigenvalues of an arbitrary (also non-square) relation.

    ``ker(T - lam I) != {0}`` iff ``Q^H (B2' - lam B1')`` has a kernel, where
    ``[B1'; B2']`` spans the operator part and ``Q`` spans ``(mul T)^⊥``.
    Candidates come from the Galerkin pencil and are kept only if that
    rectangular matrix is numerically singular. ``algebraic`` is reported
    equal to the geometric multiplicity.
    """
    tol = t.tol
    p = rel.parts(t)
    op, _ = rel.decompose(t)
    q = sp.complement(p.mul).basis
    m1 = q.conj().T @ op.top
    m2 = q.conj().T @ op.bottom
    rows, cols = m1.shape
    has_inf = p.mul.dim > 0
    if cols == 0:
        return SpectrumReport((), 0, has_inf, False, tol)
    if rows < cols:
        return SpectrumReport((), 0, has_inf, True, tol)
    g1 = m1.conj().T @ m1
    g2 = m1.conj().T @ m2
    if is_degenerate_pencil(g2, g1, tol):
        rng = np.random.default_rng(0)
        w = rng.standard_normal((cols, rows)) + 1j * rng.standard_normal((cols, rows))
        g1, g2 = w @ m1, w @ m2
        if is_degenerate_pencil(g2, g1, tol):
            return SpectrumReport((), 0, has_inf, True, tol)
    (alpha, beta), _ = scipy.linalg.eig(g2, g1, homogeneous_eigvals=True)
    keep = np.abs(beta) > tol * np.abs(alpha)
    candidates = alpha[keep] / beta[keep]
    eigs = []
    for g in _cluster(candidates, lambda v: math.sqrt(tol) * max(1.0, abs(v))):
        lam = complex(np.mean(g))
        s = scipy.linalg.svd(m2 - lam * m1, compute_uv=False)
        geo = int(np.sum(s <= math.sqrt(tol) * (1.0 + abs(lam))))
        if geo:
            eigs.append(Eigenvalue(lam, geo, geo))
    return SpectrumReport(tuple(eigs), 0, has_inf, False, tol)


def is_regular_point(t: LinearRelation, zeta: complex) -> bool:
    try:
        _check_regular(t, zeta)
    except NotInRegularSet:
        return False
    return True


def _check_regular(t: LinearRelation, zeta: complex) -> None:
    shifted = rel.shift(t, zeta)
    p = rel.parts(shifted)
    if p.ker.dim:
        raise NotInRegularSet(
            f"{zeta} is an eigenvalue (dim ker = {p.ker.dim})", zeta, "injectivity"
        )
    if p.ran.dim < t.n:
        raise NotInRegularSet(
            f"ran(T - {zeta} I) has dimension {p.ran.dim} < {t.n}", zeta, "surjectivity"
        )


def resolvent(t: LinearRelation, zeta: complex) -> np.ndarray:
    """``(T - zeta I)^{-1}`` as an ``n x n`` matrix.

    With ``T = {(B1 c, B2 c)}`` one has ``(T - zeta I)^{-1} = B1 (B2 - zeta B1)^{-1}``.
    """
    _check_regular(t, zeta)
    b1, b2 = t.top, t.bottom
    return b1 @ np.linalg.inv(b2 - zeta * b1)


def _require_selfadjoint(a: LinearRelation):
    if not classify.is_selfadjoint(a):
        raise NotSelfadjoint("relation is not selfadjoint")


def spectral_measure(a: LinearRelation, check: bool = True) -> SpectralMeasure:
    """Spectral decomposition of the selfadjoint operator part on ``(mul A)^⊥``."""
    if check:
        _require_selfadjoint(a)
    tol = a.tol
    op, _ = rel.decompose(a)
    carrier = sp.complement(rel.parts(a).mul)
    q = carrier.basis
    r = q.shape[1]
    if r == 0:
        return SpectralMeasure(carrier, np.zeros((0, 0), dtype=complex), (), tol)
    x = q.conj().T @ op.top
    y = q.conj().T @ op.bottom
    # operator part maps Q x c -> Q y c, so its matrix on the carrier is y x^{-1}
    h = np.linalg.solve(x.T, y.T).T
    h = (h + h.conj().T) / 2
    w, v = np.linalg.eigh(h)
    scale = max(1.0, float(np.max(np.abs(w))))
    pairs = []
    i = 0
    while i < r:
        j = i + 1
        while j < r and w[j] - w[i] <= tol * scale:
            j += 1
        vecs = q @ v[:, i:j]
        pairs.append((float(np.mean(w[i:j])), vecs @ vecs.conj().T))
        i = j
    return SpectralMeasure(carrier, h, tuple(pairs), tol)


def mu_count_detail(a: LinearRelation, delta: Interval, check: bool = True) -> IntervalCount:
    return spectral_measure(a, check=check).count(delta)


def mu_count(a: LinearRelation, delta: Interval, check: bool = True) -> int:
    """``mu_A(Delta)``: eigenvalues of ``A_A`` strictly inside ``Delta``, with multiplicity.

    Eigenvalues within the endpoint band are left out; see :func:`mu_count_detail`.
    """
    return mu_count_detail(a, delta, check=check).count


def _require_symmetric(s: LinearRelation):
    if not classify.is_symmetric(s):
        raise NotSymmetric("relation is not symmetric")


def is_lacuna(s: LinearRelation, delta: Interval, check: bool = True) -> bool:
    """``||f|| <= ||g - gamma f|| / xi`` for every ``(f, g)`` in ``S``.

    Checked as positive semidefiniteness of
    ``(B2 - gamma B1)^H (B2 - gamma B1) - xi^2 B1^H B1``.
    """
    if check:
        _require_symmetric(s)
    if not delta.bounded:
        raise ValueError("a lacuna must be a bounded interval")
    if s.dim == 0:
        return True
    gamma, xi = delta.center, delta.radius
    d = s.bottom - gamma * s.top
    dd = d.conj().T @ d
    bb = s.top.conj().T @ s.top
    m = dd - xi**2 * bb
    m = (m + m.conj().T) / 2
    scale = max(1.0, np.linalg.norm(dd, 2), xi**2 * np.linalg.norm(bb, 2))
    return bool(np.linalg.eigvalsh(m)[0] >= -s.tol * scale)


def lacuna_radius(s: LinearRelation, gamma: float) -> float:
    """Largest ``xi`` such that ``(gamma - xi, gamma + xi)`` is a lacuna of ``S``.

    Equals ``min ||g - gamma f|| / ||f||`` over pairs with ``f != 0``; pairs
    differing by an element of ``mul S`` share ``f``, so the minimum is taken
    after projecting the value onto ``(mul S)^⊥``.
    """
    op, _ = rel.decompose(s)
    if op.dim == 0:
        return math.inf
    q = sp.complement(rel.parts(s).mul).basis
    d = q @ (q.conj().T @ (op.bottom - gamma * op.top))
    a = d.conj().T @ d
    b = op.top.conj().T @ op.top
    w = scipy.linalg.eigh((a + a.conj().T) / 2, (b + b.conj().T) / 2, eigvals_only=True)
    return float(math.sqrt(max(w[0], 0.0)))


def essential_spectrum(a: LinearRelation) -> EssentialSpectrum:
    _require_selfadjoint(a)
    return EssentialSpectrum()
