"""Symmetric restrictions of a Hermitian matrix and their selfadjoint extensions.

For Hermitian ``J`` and a nonzero ``delta``, ``B_delta`` is ``J`` restricted to
``delta^⊥``. Its selfadjoint extensions are ``J(tau) = graph(J + tau delta delta^H)``
for real ``tau`` and the relation ``J(inf) = B_delta ∔ span{(0, delta)}``.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Union

import numpy as np

from . import classify
from . import relation as rel
from . import spectral
from . import subspace as sp
from .errors import LambdaNotQuasiRegular, RelcalcError
from .relation import LinearRelation
from .subspace import DEFAULT_TOL

__all__ = [
    "Infinity",
    "TAU_INF",
    "Tau",
    "parse_tau",
    "ExtensionFamily",
    "TwoDefectRestriction",
    "restrict",
    "family",
    "extension",
    "extension_tau",
    "extension_infinity",
    "extension_with_eigenvalue",
    "two_defect",
    "is_generating",
    "krylov_dimension",
    "jacobi",
    "SweepRow",
    "family_sweep",
]


class Infinity(enum.Enum):
    INF = "inf"

    def __repr__(self):
        return "TAU_INF"

    def __str__(self):
        return "inf"


TAU_INF = Infinity.INF
Tau = Union[float, Infinity]


def parse_tau(value) -> Tau:
    """``'inf'``, ``'∞'`` or a float infinity map to :data:`TAU_INF`; anything else to float."""
    if value is TAU_INF:
        return TAU_INF
    if isinstance(value, str) and value.strip().lower() in ("inf", "+inf", "infinity", "∞"):
        return TAU_INF
    x = float(value)
    if math.isinf(x):
        return TAU_INF
    if math.isnan(x):
        raise ValueError("tau must not be NaN")
    return x


def _hermitian(j) -> np.ndarray:
    j = np.asarray(j, dtype=complex)
    if j.ndim != 2 or j.shape[0] != j.shape[1]:
        raise ValueError(f"J must be square, got shape {j.shape}")
    if not np.allclose(j, j.conj().T, atol=1e-12 * max(1.0, np.abs(j).max(initial=0))):
        raise ValueError("J must be Hermitian")
    return (j + j.conj().T) / 2


def restrict(j, deltas, tol: float = DEFAULT_TOL) -> LinearRelation:
    """``graph(J) ∩ (span{deltas}^⊥ ⊕ C^n)``: ``J`` restricted to the vectors orthogonal to every delta."""
    j = _hermitian(j)
    n = j.shape[0]
    d = np.column_stack([np.asarray(x, dtype=complex).ravel() for x in deltas])
    if d.shape[0] != n:
        raise ValueError(f"deltas must have length {n}")
    if np.any(np.linalg.norm(d, axis=0) == 0):
        raise ValueError("deltas must be nonzero")
    if sp.numerical_rank(d, tol) != d.shape[1]:
        raise ValueError("deltas must be linearly independent")
    domain = sp.complement(sp.span(d, tol))
    return rel.from_basis(np.vstack([domain.basis, j @ domain.basis]), tol)


@dataclass(frozen=True, eq=False)
class ExtensionFamily:
    j: np.ndarray
    delta: np.ndarray
    restriction: LinearRelation

    @property
    def n(self) -> int:
        return self.j.shape[0]

    @property
    def tol(self) -> float:
        return self.restriction.tol


def family(j, delta, tol: float = DEFAULT_TOL) -> ExtensionFamily:
    j = _hermitian(j)
    delta = np.asarray(delta, dtype=complex).ravel()
    return ExtensionFamily(j, delta, restrict(j, [delta], tol))


def extension_tau(fam: ExtensionFamily, tau: float, verify: bool = False) -> LinearRelation:
    """``J(tau) = {(f, g + tau <delta, f> delta) : (f, g) in J}``."""
    tau = parse_tau(tau)
    if tau is TAU_INF:
        raise ValueError("use extension_infinity for tau = inf")
    d = fam.delta[:, None]
    a = rel.from_operator(fam.j + tau * (d @ d.conj().T), fam.tol)
    if verify:
        _verify_extension(fam.restriction, a)
    return a


def extension_infinity(fam: ExtensionFamily, verify: bool = False) -> LinearRelation:
    """``J(inf) = B_delta ∔ span{(0, delta)}``."""
    n = fam.n
    mv = rel.from_pairs([(np.zeros(n), fam.delta)], fam.tol)
    a = rel.direct_sum(fam.restriction, mv)
    if verify:
        _verify_extension(fam.restriction, a)
    return a


def extension(fam: ExtensionFamily, tau, verify: bool = False) -> LinearRelation:
    tau = parse_tau(tau)
    if tau is TAU_INF:
        return extension_infinity(fam, verify)
    return extension_tau(fam, tau, verify)


def _verify_extension(s: LinearRelation, a: LinearRelation) -> None:
    if not rel.is_subrelation(s, a):
        raise RelcalcError("constructed relation does not extend the restriction")
    if not classify.is_selfadjoint(a):
        raise RelcalcError("constructed extension is not selfadjoint")


def extension_with_eigenvalue(s: LinearRelation, lam: complex,
                              verify: bool = True) -> LinearRelation:
    """Maximal dissipative extension of ``S`` having ``lam`` as an eigenvalue.

    Builds ``A = S ∔ {(f, lam f) in S*}``. ``A`` is selfadjoint for real
    ``lam`` and maximal dissipative but not selfadjoint for ``Im lam > 0``.
    """
    lam = complex(lam)
    if lam.imag < -s.tol:
        raise ValueError("lam must lie in the closed upper half-plane")
    if not classify.is_symmetric(s):
        raise ValueError("S must be symmetric")
    if classify.eigenvalue_multiplicity(s, lam):
        raise LambdaNotQuasiRegular(f"{lam} is an eigenvalue of S")
    star = rel.adjoint(s)
    defect = rel.intersection(star, rel.pencil_line(s.n, lam, s.tol))
    a = rel.direct_sum(s, defect)
    if verify:
        if not classify.is_maximal_dissipative(a):
            raise RelcalcError("extension is not maximal dissipative")
        if bool(classify.is_selfadjoint(a)) != (abs(lam.imag) <= s.tol):
            raise RelcalcError("selfadjointness of the extension does not match Im lam")
    return a


@dataclass(frozen=True, eq=False)
class TwoDefectRestriction:
    j: np.ndarray
    delta1: np.ndarray
    delta2: np.ndarray
    restriction: LinearRelation
    ext1: LinearRelation
    ext2: LinearRelation


def two_defect(j, delta1, delta2, tol: float = DEFAULT_TOL) -> TwoDefectRestriction:
    """Restriction to ``{delta1, delta2}^⊥`` and the extensions ``B_{delta_k} ∔ span{(0, delta_k)}``."""
    j = _hermitian(j)
    d1 = np.asarray(delta1, dtype=complex).ravel()
    d2 = np.asarray(delta2, dtype=complex).ravel()
    if abs(np.vdot(d1, d2)) > 1e-12 * np.linalg.norm(d1) * np.linalg.norm(d2):
        raise ValueError("delta1 and delta2 must be orthogonal")
    s = restrict(j, [d1, d2], tol)
    e1 = extension_infinity(family(j, d1, tol))
    e2 = extension_infinity(family(j, d2, tol))
    return TwoDefectRestriction(j, d1, d2, s, e1, e2)


def krylov_dimension(j, delta, tol: float = DEFAULT_TOL) -> int:
    """Dimension of ``span{delta, J delta, ..., J^{n-1} delta}`` via Arnoldi.

    Each new direction is orthogonalized twice against the previous ones;
    the iteration stops once the residual drops below ``tol * ||J||``.
    """
    j = np.asarray(j, dtype=complex)
    n = j.shape[0]
    v = np.asarray(delta, dtype=complex).ravel()
    nv = np.linalg.norm(v)
    if nv == 0:
        raise ValueError("delta must be nonzero")
    scale = max(np.linalg.norm(j, 2), 1.0)
    q = np.zeros((n, n), dtype=complex)
    q[:, 0] = v / nv
    for k in range(1, n):
        w = j @ q[:, k - 1]
        for _ in range(2):
            w = w - q[:, :k] @ (q[:, :k].conj().T @ w)
        h = np.linalg.norm(w)
        if h <= tol * scale:
            return k
        q[:, k] = w / h
    return n


def is_generating(j, delta, tol: float = DEFAULT_TOL) -> bool:
    """``delta`` is a cyclic vector of ``J``: its Krylov space is all of C^n."""
    return krylov_dimension(j, delta, tol) == np.asarray(j).shape[0]


def jacobi(n: int, diag=0.0, offdiag=1.0) -> np.ndarray:
    """Real symmetric tridiagonal matrix; scalars broadcast to constant bands."""
    if n < 1:
        raise ValueError("n must be positive")
    a = np.asarray(diag, dtype=float)
    b = np.asarray(offdiag, dtype=float)
    if a.ndim == 0:
        a = np.full(n, float(a))
    if b.ndim == 0:
        b = np.full(n - 1, float(b))
    if a.shape != (n,) or b.shape != (n - 1,):
        raise ValueError(f"need {n} diagonal and {n - 1} off-diagonal entries")
    if np.any(b <= 0):
        raise ValueError("off-diagonal entries must be positive")
    return np.diag(a) + np.diag(b, 1) + np.diag(b, -1)


@dataclass(frozen=True)
class SweepRow:
    tau: Tau
    eigenvalues: tuple[float, ...]


def family_sweep(fam: ExtensionFamily, taus) -> list[SweepRow]:
    """Sorted spectrum of ``J(tau)`` for each ``tau``; ``inf`` rows come last."""
    rows = []
    for tau in taus:
        tau = parse_tau(tau)
        a = extension(fam, tau)
        w = spectral.spectral_measure(a, check=False).eigenvalues
        rows.append(SweepRow(tau, tuple(float(x) for x in w)))
    rows.sort(key=lambda r: (r.tau is TAU_INF, 0.0 if r.tau is TAU_INF else r.tau))
    return rows
