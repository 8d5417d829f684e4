"""Symmetric / dissipative / selfadjoint predicates and deficiency data."""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import relation as rel
from . import subspace as sp
from .relation import LinearRelation

__all__ = [
    "DeficiencyData",
    "SelfadjointDiagnostics",
    "form_matrix",
    "is_symmetric",
    "is_dissipative",
    "is_selfadjoint",
    "selfadjoint_diagnostics",
    "is_bounded",
    "deficiency",
    "deficiency_indices",
    "is_maximal_dissipative",
    "eigenvalue_multiplicity",
    "eigenspace",
    "domain_in_mul_perp",
]


@dataclass(frozen=True)
class DeficiencyData:
    zeta: complex
    index: int
    space: LinearRelation


@dataclass(frozen=True)
class SelfadjointDiagnostics:
    """Outcome of the selfadjointness test with its equivalent characterizations.

    Truthiness follows ``equals_adjoint``; the other fields record whether the
    index and spectrum characterizations agreed.
    """

    equals_adjoint: bool
    symmetric: bool
    eta_minus: int
    eta_plus: int
    spectrum_real: bool

    def __bool__(self):
        return self.equals_adjoint

    @property
    def consistent(self) -> bool:
        if not self.symmetric:
            return not self.equals_adjoint
        others = self.eta_minus == 0 and self.eta_plus == 0 and self.spectrum_real
        return others == self.equals_adjoint


def form_matrix(t: LinearRelation) -> np.ndarray:
    """Hermitian matrix of ``c -> Im <B1 c, B2 c>``.

    The graph basis is orthonormal, so the norm of this matrix is at most
    1/2 and an absolute threshold is already scale-free.
    """
    b1, b2 = t.top, t.bottom
    w = b1.conj().T @ b2
    h = (w - w.conj().T) / 2j
    return (h + h.conj().T) / 2


def _form_symmetric(t: LinearRelation) -> bool:
    if t.dim == 0:
        return True
    return bool(np.linalg.norm(form_matrix(t), 2) <= t.tol)


def is_symmetric(t: LinearRelation) -> bool:
    by_form = _form_symmetric(t)
    by_adjoint = rel.is_subrelation(t, rel.adjoint(t))
    if by_form != by_adjoint:
        warnings.warn(
            "symmetry tests disagree (form: %s, T ⊆ T*: %s); relation is near "
            "the tolerance boundary" % (by_form, by_adjoint),
            RuntimeWarning,
            stacklevel=2,
        )
    return by_form


def is_dissipative(t: LinearRelation) -> bool:
    if t.dim == 0:
        return True
    return bool(np.linalg.eigvalsh(form_matrix(t))[0] >= -t.tol)


def deficiency(t: LinearRelation, zeta: complex) -> DeficiencyData:
    """``eta_zeta(T) = dim ran(T - zeta I)^⊥`` and ``N_zeta(T) = {(f, zeta f) in T}``."""
    ran = rel.parts(rel.shift(t, zeta)).ran
    space = rel.intersection(t, rel.pencil_line(t.n, zeta, t.tol))
    return DeficiencyData(zeta=complex(zeta), index=t.n - ran.dim, space=space)


def deficiency_indices(t: LinearRelation, check: bool = True) -> tuple[int, int]:
    """``(eta_-, eta_+)`` sampled at ``-i`` and ``+i``.

    With ``check`` a second sample at ``∓2i`` must agree, since the index is
    constant on connected components of the quasi-regular set.
    """
    lo = deficiency(t, -1j).index
    hi = deficiency(t, 1j).index
    if check:
        lo2 = deficiency(t, -2j).index
        hi2 = deficiency(t, 2j).index
        if (lo, hi) != (lo2, hi2):
            warnings.warn(
                f"deficiency index not constant in half-planes: "
                f"eta(-i)={lo}, eta(-2i)={lo2}, eta(i)={hi}, eta(2i)={hi2}",
                RuntimeWarning,
                stacklevel=2,
            )
    return lo, hi


def selfadjoint_diagnostics(t: LinearRelation) -> SelfadjointDiagnostics:
    from .spectral import spectrum  # spectral imports this module

    equals_adjoint = rel.equal(t, rel.adjoint(t))
    symmetric = _form_symmetric(t)
    eta_minus, eta_plus = deficiency_indices(t, check=False)
    report = spectrum(t)
    diag = SelfadjointDiagnostics(
        equals_adjoint=equals_adjoint,
        symmetric=symmetric,
        eta_minus=eta_minus,
        eta_plus=eta_plus,
        spectrum_real=report.spectrum_real,
    )
    if not diag.consistent:
        warnings.warn(
            f"selfadjointness characterizations disagree: {diag}",
            RuntimeWarning,
            stacklevel=2,
        )
    return diag


def is_selfadjoint(t: LinearRelation) -> SelfadjointDiagnostics:
    """``T = T*``; the returned bundle is truthy exactly when that holds."""
    return selfadjoint_diagnostics(t)


def is_bounded(t: LinearRelation) -> bool:
    """Bounded in the sense ``||g|| <= C ||f||``; in finite dimension iff ``mul T = {0}``."""
    return rel.parts(t).mul.dim == 0


def is_maximal_dissipative(t: LinearRelation) -> bool:
    return is_dissipative(t) and deficiency(t, -1j).index == 0


def eigenspace(t: LinearRelation, lam: complex) -> sp.Subspace:
    """``ker(T - lam I)``."""
    return rel.parts(rel.shift(t, lam)).ker


def eigenvalue_multiplicity(t: LinearRelation, lam: complex) -> int:
    """``mu_T(lam) = dim ker(T - lam I)``."""
    return eigenspace(t, lam).dim


def domain_in_mul_perp(t: LinearRelation) -> bool:
    """``dom T ⊆ (mul T)^⊥``, which every dissipative relation satisfies."""
    p = rel.parts(t)
    if p.mul.dim == 0 or p.dom.dim == 0:
        return True
    overlap = p.mul.basis.conj().T @ p.dom.basis
    return bool(np.linalg.norm(overlap, 2) <= 10 * t.tol)
