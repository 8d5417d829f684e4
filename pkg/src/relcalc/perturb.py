"""Resolvent differences and numerical verdicts for the perturbation bounds.

Each ``check_*`` function verifies its hypotheses (raising
:class:`~relcalc.errors.PreconditionFailed` or a subclass when they fail)
and returns a :class:`PerturbationVerdict`. A verdict's ``holds`` is
``None`` when the numerics cannot decide, e.g. an eigenvalue sits on an
interval endpoint.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from . import classify
from . import relation as rel
from . import spectral
from . import subspace as sp
from .errors import (
    ExtensionCheckFailed,
    NotALacuna,
    NotInRegularSet,
    NotSelfadjoint,
    PreconditionFailed,
)
from .relation import LinearRelation
from .spectral import Interval
from .subspace import ABS_FLOOR

__all__ = [
    "Claim",
    "PerturbationVerdict",
    "ResolventDifference",
    "resolvent_difference",
    "check_rank_vs_additive",
    "check_rank_vs_deficiency",
    "eigenspace_comparison",
    "check_counting_bounds",
    "check_lacuna_bound",
    "interlacing_check",
    "find_regular_point",
]


class Claim(enum.Enum):
    RANK_VS_ADDITIVE = "RankVsAdditive"
    RANK_VS_DEFICIENCY = "RankVsDeficiency"
    EIGENSPACE_BOUNDS = "EigenspaceBounds"
    COUNTING_BOUNDS = "CountingBounds"
    LACUNA_BOUND = "LacunaBound"
    INTERLACING = "Interlacing"


@dataclass(frozen=True)
class PerturbationVerdict:
    claim_id: Claim
    lhs: dict
    rhs: dict
    holds: bool | None
    witness: dict | None = None
    flags: tuple[str, ...] = ()

    def __post_init__(self):
        if (self.witness is not None) != (self.holds is False):
            raise ValueError("a witness is attached exactly when the claim fails")

    @property
    def status(self) -> str:
        if self.holds is None:
            return "inconclusive"
        return "holds" if self.holds else "fails"

    def as_dict(self) -> dict:
        return {
            "claim": self.claim_id.value,
            "status": self.status,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "witness": self.witness,
            "flags": list(self.flags),
        }


@dataclass(frozen=True, eq=False)
class ResolventDifference:
    zeta: complex
    matrix: np.ndarray
    rank: int
    singular_values: np.ndarray
    rank_uncertain: bool = False
    check_zeta: complex | None = None
    check_rank: int | None = None

    @property
    def rank_constant(self) -> bool:
        return self.check_rank is None or self.check_rank == self.rank


def _rank_with_flag(m: np.ndarray, scale: float, tol: float):
    s = scipy.linalg.svd(m, compute_uv=False) if m.size else np.zeros(0)
    thresh = max(tol * scale, ABS_FLOOR)
    rank = int(np.sum(s > thresh))
    uncertain = bool(np.any((s > thresh / 10) & (s <= thresh * 10)))
    return rank, s, uncertain


def _difference(a, l, zeta, tol):
    ra = spectral.resolvent(a, zeta)
    rl = spectral.resolvent(l, zeta)
    scale = max(1.0, np.linalg.norm(ra, 2), np.linalg.norm(rl, 2))
    f = rl - ra
    return f, _rank_with_flag(f, scale, tol)


def find_regular_point(*relations: LinearRelation, near: complex = 1j,
                       lower: bool | None = None) -> complex:
    """A point in the regular set of every relation, searched near ``near``.

    ``lower=True`` restricts the search to the open lower half-plane and
    ``lower=False`` to the upper one.
    """
    for k in range(64):
        radius = 0.25 * (1 + k // 8)
        angle = 2 * math.pi * (k % 8) / 8 + 0.3
        z = near + (radius * complex(math.cos(angle), math.sin(angle)) if k else 0)
        if lower is True and z.imag >= 0:
            z = complex(z.real, -abs(z.imag) - 0.5)
        if lower is False and z.imag <= 0:
            z = complex(z.real, abs(z.imag) + 0.5)
        if all(spectral.is_regular_point(t, z) for t in relations):
            return z
    raise NotInRegularSet("no common regular point found", near, "search")


def resolvent_difference(a: LinearRelation, l: LinearRelation, zeta: complex = 1j,
                         check: bool = True) -> ResolventDifference:
    """``F = (L - zeta I)^{-1} - (A - zeta I)^{-1}`` with its numerical rank.

    When ``check`` is set the rank is recomputed at a second regular point,
    since it does not depend on ``zeta``.
    """
    tol = max(a.tol, l.tol)
    f, (rank, s, uncertain) = _difference(a, l, zeta, tol)
    zeta2 = rank2 = None
    if check:
        try:
            zeta2 = find_regular_point(a, l, near=zeta * 1.7 + 0.31 if zeta else 0.5j)
            _, (rank2, _, unc2) = _difference(a, l, zeta2, tol)
            uncertain = uncertain or unc2
        except NotInRegularSet:
            zeta2 = None
    return ResolventDifference(
        zeta=complex(zeta), matrix=f, rank=rank, singular_values=s,
        rank_uncertain=uncertain, check_zeta=zeta2, check_rank=rank2,
    )


def _flags(diff: ResolventDifference) -> list[str]:
    out = []
    if diff.rank_uncertain:
        out.append("rank-uncertain")
    if not diff.rank_constant:
        out.append("rank-not-constant")
    return out


def _require(cond: bool, msg: str, hypothesis: str, exc=PreconditionFailed):
    if not cond:
        raise exc(msg, hypothesis)


def _verdict(claim, lhs, rhs, holds, witness, flags):
    if holds is False and witness is None:
        witness = {**lhs, **rhs}
    if holds is not False:
        witness = None
    return PerturbationVerdict(claim, lhs, rhs, holds, witness, tuple(flags))


def check_rank_vs_additive(a: LinearRelation, v: LinearRelation,
                           zeta: complex = -1j) -> PerturbationVerdict:
    """``rank F <= rank V`` for ``L = A + V`` with ``V`` everywhere defined."""
    _require(classify.is_maximal_dissipative(a), "A is not maximal dissipative", "A maximal dissipative")
    _require(classify.is_maximal_dissipative(v), "V is not maximal dissipative", "V maximal dissipative")
    pv = rel.parts(v)
    _require(pv.dom.dim == v.n and pv.mul.dim == 0, "V is not an everywhere defined operator", "dom V = H")
    l = rel.add(a, v)
    diff = resolvent_difference(a, l, zeta)
    rank_v = pv.ran.dim
    holds = diff.rank <= rank_v
    return _verdict(Claim.RANK_VS_ADDITIVE, {"rank_F": diff.rank}, {"rank_V": rank_v},
                    holds, None, _flags(diff))


def _require_extension(s, t, name):
    _require(rel.is_subrelation(s, t), f"S is not contained in {name}", f"S ⊆ {name}",
             ExtensionCheckFailed)


def check_rank_vs_deficiency(a: LinearRelation, l: LinearRelation, s: LinearRelation,
                             zeta: complex = -1j) -> PerturbationVerdict:
    """``rank F <= eta_-(S)`` for maximal dissipative extensions ``A``, ``L`` of ``S``."""
    _require_extension(s, a, "A")
    _require_extension(s, l, "L")
    _require(classify.is_dissipative(s), "S is not dissipative", "S dissipative")
    for t, name in ((a, "A"), (l, "L")):
        _require(classify.is_maximal_dissipative(t), f"{name} is not maximal dissipative",
                 f"{name} maximal dissipative")
    _require(complex(zeta).imag < 0, "zeta must lie in the lower half-plane", "zeta in C_-")
    diff = resolvent_difference(a, l, zeta)
    eta = classify.deficiency(s, zeta).index
    return _verdict(Claim.RANK_VS_DEFICIENCY, {"rank_F": diff.rank}, {"eta_minus_S": eta},
                    diff.rank <= eta, None, _flags(diff))


def eigenspace_comparison(a: LinearRelation, l: LinearRelation, lam: complex,
                          zeta: complex | None = None) -> PerturbationVerdict:
    """Eigenspaces of ``A`` and ``L`` at ``lam`` differ by at most ``rank F`` dimensions.

    With ``G = ker(A - lam) ∩ ker(L - lam)`` checks
    ``dim(ker(A - lam) ⊖ G) <= rank F``, the same for ``L``, and
    ``|mu_A(lam) - mu_L(lam)| <= rank F``.
    """
    for t, name in ((a, "A"), (l, "L")):
        _require(classify.is_maximal_dissipative(t), f"{name} is not maximal dissipative",
                 f"{name} maximal dissipative")
    if zeta is None:
        zeta = find_regular_point(a, l, near=-1j)
    diff = resolvent_difference(a, l, zeta)
    ker_a = classify.eigenspace(a, lam)
    ker_l = classify.eigenspace(l, lam)
    g = sp.intersect(ker_a, ker_l)
    extra_a = sp.ominus(ker_a, g).dim
    extra_l = sp.ominus(ker_l, g).dim
    mu_a, mu_l = ker_a.dim, ker_l.dim
    r = diff.rank
    lhs = {"dim_kerA_minus_G": extra_a, "dim_kerL_minus_G": extra_l,
           "abs_mu_diff": abs(mu_a - mu_l), "mu_A": mu_a, "mu_L": mu_l, "dim_G": g.dim}
    holds = extra_a <= r and extra_l <= r and abs(mu_a - mu_l) <= r
    witness = None if holds else {"lambda": complex(lam), **lhs, "rank_F": r}
    return _verdict(Claim.EIGENSPACE_BOUNDS, lhs, {"rank_F": r}, holds, witness, _flags(diff))


def check_counting_bounds(a: LinearRelation, l: LinearRelation, delta: Interval,
                          zeta: complex = 1j) -> PerturbationVerdict:
    """``mu_A(Delta) - rank F <= mu_L(Delta) <= mu_A(Delta) + rank F``."""
    for t, name in ((a, "A"), (l, "L")):
        if not classify.is_selfadjoint(t):
            raise NotSelfadjoint(f"{name} is not selfadjoint")
    diff = resolvent_difference(a, l, zeta)
    ca = spectral.mu_count_detail(a, delta, check=False)
    cl = spectral.mu_count_detail(l, delta, check=False)
    r = diff.rank
    flags = _flags(diff)
    lhs = {"mu_L": cl.count}
    rhs = {"mu_A_minus_rank_F": ca.count - r, "mu_A_plus_rank_F": ca.count + r,
           "mu_A": ca.count, "rank_F": r}
    if ca.collisions or cl.collisions:
        flags.append("endpoint-collision")
        return _verdict(Claim.COUNTING_BOUNDS, lhs, rhs, None, None, flags)
    holds = ca.count - r <= cl.count <= ca.count + r
    witness = None if holds else {"interval": (delta.alpha, delta.beta),
                                  "mu_A": ca.count, "mu_L": cl.count, "rank_F": r}
    return _verdict(Claim.COUNTING_BOUNDS, lhs, rhs, holds, witness, flags)


def check_lacuna_bound(a: LinearRelation, s: LinearRelation,
                       delta: Interval) -> PerturbationVerdict:
    """``mu_A(Delta) <= eta_-(S)`` for a selfadjoint extension ``A`` of ``S`` and a lacuna ``Delta``."""
    _require(classify.is_symmetric(s), "S is not symmetric", "S symmetric")
    if not classify.is_selfadjoint(a):
        raise NotSelfadjoint("A is not selfadjoint")
    _require_extension(s, a, "A")
    _require(spectral.is_lacuna(s, delta, check=False),
             f"({delta.alpha}, {delta.beta}) is not a lacuna of S", "Delta lacuna", NotALacuna)
    count = spectral.mu_count_detail(a, delta, check=False)
    eta = classify.deficiency(s, -1j).index
    flags = ["endpoint-collision"] if count.collisions else []
    holds = count.count <= eta
    witness = None if holds else {"interval": (delta.alpha, delta.beta),
                                  "mu_A": count.count, "eta_minus_S": eta}
    return _verdict(Claim.LACUNA_BOUND, {"mu_A": count.count}, {"eta_minus_S": eta},
                    holds, witness, flags)


def interlacing_check(a: LinearRelation, l: LinearRelation,
                      delta: Interval = Interval.real_line(),
                      s: LinearRelation | None = None) -> PerturbationVerdict:
    """Spectra of two selfadjoint extensions of a (1,1) symmetric relation alternate in ``Delta``.

    ``s`` defaults to the largest common restriction ``A ∩ L``.
    """
    for t, name in ((a, "A"), (l, "L")):
        if not classify.is_selfadjoint(t):
            raise PreconditionFailed(f"{name} is not selfadjoint", f"{name} selfadjoint")
    _require(not rel.equal(a, l), "A and L are the same relation", "A != L")
    if s is None:
        s = rel.intersection(a, l)
    else:
        _require_extension(s, a, "A")
        _require_extension(s, l, "L")
    _require(classify.is_symmetric(s), "S is not symmetric", "S symmetric")
    eta = classify.deficiency_indices(s)
    _require(eta == (1, 1), f"S has deficiency indices {eta}, expected (1, 1)", "eta(S) = (1, 1)")
    bad = [e.value for e in spectral.point_spectrum(s).eigenvalues
           if abs(e.value.imag) <= math.sqrt(s.tol) and e.value.real in delta]
    _require(not bad, f"eigenvalues {bad} of S lie in Delta", "Delta in quasi-regular set of S")

    tol = max(a.tol, l.tol)
    merged = []
    for label, t in (("A", a), ("L", l)):
        for lam, mult in spectral.spectral_measure(t, check=False).multiplicities():
            if lam in delta:
                merged.append((lam, label, mult))
    merged.sort()
    lhs = {"A": [m[0] for m in merged if m[1] == "A"],
           "L": [m[0] for m in merged if m[1] == "L"]}
    rhs = {"pattern": "strictly alternating, simple, disjoint"}

    witness = None
    for lam, label, mult in merged:
        if mult != 1:
            witness = {"kind": "multiple", "lambda": lam, "relation": label, "multiplicity": mult}
            break
    if witness is None:
        for (x, lx, _), (y, ly, _) in zip(merged, merged[1:]):
            if abs(x - y) <= tol * max(1.0, abs(x), abs(y)) and lx != ly:
                witness = {"kind": "common", "lambda": x}
                break
            if lx == ly:
                witness = {"kind": "not-alternating", "lambda_pair": (x, y), "relation": lx}
                break
    return _verdict(Claim.INTERLACING, lhs, rhs, witness is None, witness, [])
