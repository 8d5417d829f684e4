import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from relcalc import subspace as sp
from relcalc.errors import DimensionMismatch
from relcalc.subspace import Inclusion

from conftest import crandn

e1 = np.array([1.0, 0.0])
e2 = np.array([0.0, 1.0])


def test_span_collinear():
    s = sp.span([np.array([1, 0]), np.array([2, 0])])
    assert s.dim == 1
    assert np.allclose(np.abs(s.basis[:, 0]), [1, 0])


def test_span_empty():
    s = sp.span([], ambient_dim=3)
    assert s.dim == 0 and s.ambient_dim == 3


def test_span_many_vectors_matches_rank_oracle(rng):
    m = crandn(rng, 3, 50)
    s = sp.span(m)
    assert s.dim == np.linalg.matrix_rank(m) == 3


def test_span_orthonormal_basis(rng):
    s = sp.span(crandn(rng, 6, 4))
    assert np.allclose(s.basis.conj().T @ s.basis, np.eye(4), atol=1e-9)


def test_span_rejects_bad_input():
    with pytest.raises(ValueError):
        sp.span([])
    with pytest.raises(ValueError):
        sp.span([np.array([np.nan, 1.0])])
    with pytest.raises(DimensionMismatch):
        sp.span([np.ones(2), np.ones(3)])
    with pytest.raises(ValueError):
        sp.span(np.zeros((0, 2)))


def test_noise_collapses_to_zero():
    assert sp.span([np.array([1e-15, 0.0])]).dim == 0


def test_relative_rank_threshold():
    v = np.array([[1.0, 1.0], [0.0, 1e-12]])
    assert sp.span(v).dim == 1
    assert sp.span(v, tol=1e-14).dim == 2


def test_lattice_examples():
    a, b = sp.span([e1]), sp.span([e2])
    assert sp.lattice(a, b, "intersect").dim == 0
    assert sp.lattice(a, sp.span([e1 + e2]), "sum").dim == 2
    out = sp.lattice(sp.full(2), a, "ominus")
    assert sp.equal(out, b)
    assert sp.equal(sp.lattice(a, None, "complement"), b)
    with pytest.raises(ValueError):
        sp.lattice(a, b, "union")


def test_lattice_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        sp.sum_(sp.full(2), sp.full(3))
    with pytest.raises(DimensionMismatch):
        sp.intersect(sp.full(2), sp.full(3))


def test_membership_and_compare():
    s = sp.span([e1])
    assert np.array([3, 0]) in s
    assert np.array([0, 1]) not in s
    assert sp.compare(s, sp.full(2)) is Inclusion.A_SUBSET_B
    assert sp.compare(sp.full(2), s) is Inclusion.B_SUBSET_A
    assert sp.compare(s, sp.span([e2])) is Inclusion.INCOMPARABLE
    assert sp.compare(s, sp.span([2j * e1])) is Inclusion.EQUAL


def test_project_examples(rng):
    assert np.allclose(sp.project(sp.span([e1]), np.array([3, 4])), [3, 0])
    assert np.allclose(sp.project(sp.zero(2), np.array([3, 4])), 0)
    s = sp.span(crandn(rng, 5, 2))
    v = crandn(rng, 5)
    pv = sp.project(s, v)
    assert np.linalg.norm(sp.project(s, pv) - pv) <= 1e-10


def test_distance():
    a = sp.span([e1])
    assert sp.distance(a, a) == 0.0
    assert np.isclose(sp.distance(a, sp.span([e1 + e2])), np.pi / 4)
    assert sp.distance(a, sp.full(2)) == pytest.approx(np.pi / 2)
    tiny = sp.span([np.array([1.0, 1e-12])])
    assert sp.distance(a, tiny) == pytest.approx(1e-12, rel=1e-3)


def test_intersection_of_planes(rng):
    common = crandn(rng, 4)
    a = sp.span([common, crandn(rng, 4)])
    b = sp.span([common, crandn(rng, 4)])
    c = sp.intersect(a, b)
    assert c.dim == 1
    assert common in c


def test_basis_is_read_only(rng):
    s = sp.span(crandn(rng, 3, 2))
    with pytest.raises(ValueError):
        s.basis[0, 0] = 1.0


@st.composite
def subspace_pairs(draw):
    m = draw(st.integers(1, 6))
    da = draw(st.integers(0, m))
    db = draw(st.integers(0, m))
    seed = draw(st.integers(0, 2**32 - 1))
    rng = np.random.default_rng(seed)
    # share some directions so intersections are not always trivial
    shared = draw(st.integers(0, min(da, db)))
    base = crandn(rng, m, shared)
    a = np.hstack([base, crandn(rng, m, da - shared)])
    b = np.hstack([base, crandn(rng, m, db - shared)])
    return sp.span(a, ambient_dim=m), sp.span(b, ambient_dim=m), rng


SETTINGS = settings(max_examples=60, deadline=None)


@SETTINGS
@given(subspace_pairs())
def test_complement_dimension(pair):
    a, _, _ = pair
    assert a.dim + sp.complement(a).dim == a.ambient_dim
    assert sp.equal(sp.complement(sp.complement(a)), a)


@SETTINGS
@given(subspace_pairs())
def test_de_morgan(pair):
    a, b, _ = pair
    lhs = sp.complement(sp.intersect(a, b))
    rhs = sp.sum_(sp.complement(a), sp.complement(b))
    assert sp.equal(lhs, rhs)
    lhs = sp.complement(sp.sum_(a, b))
    rhs = sp.intersect(sp.complement(a), sp.complement(b))
    assert sp.equal(lhs, rhs)


@SETTINGS
@given(subspace_pairs())
def test_commutativity(pair):
    a, b, _ = pair
    assert sp.equal(sp.sum_(a, b), sp.sum_(b, a))
    assert sp.equal(sp.intersect(a, b), sp.intersect(b, a))


@SETTINGS
@given(subspace_pairs())
def test_associativity(pair):
    a, b, rng = pair
    c = sp.span(crandn(rng, a.ambient_dim, int(rng.integers(0, a.ambient_dim + 1))),
                ambient_dim=a.ambient_dim)
    assert sp.equal(sp.sum_(sp.sum_(a, b), c), sp.sum_(a, sp.sum_(b, c)))
    assert sp.equal(sp.intersect(sp.intersect(a, b), c), sp.intersect(a, sp.intersect(b, c)))


@SETTINGS
@given(subspace_pairs())
def test_dimension_formula_and_ominus(pair):
    a, b, _ = pair
    assert sp.sum_(a, b).dim + sp.intersect(a, b).dim == a.dim + b.dim
    diff = sp.ominus(a, b)
    assert sp.equal(diff, sp.complement(sp.sum_(sp.complement(a), b)))
    assert diff.dim == 0 or np.allclose(b.basis.conj().T @ diff.basis, 0, atol=1e-9)


@SETTINGS
@given(subspace_pairs())
def test_projection_idempotent_and_contractive(pair):
    a, _, rng = pair
    v = crandn(rng, a.ambient_dim)
    pv = sp.project(a, v)
    assert np.linalg.norm(sp.project(a, pv) - pv) <= 1e-10
    assert np.linalg.norm(pv) <= np.linalg.norm(v) * (1 + 1e-12)
    assert pv in a
