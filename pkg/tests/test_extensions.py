import math

import numpy as np
import pytest

from relcalc import classify
from relcalc import extensions as ext
from relcalc import relation as rel
from relcalc import spectral
from relcalc.errors import LambdaNotQuasiRegular

from conftest import E1, E2, J2, crandn, random_hermitian

Z2 = np.zeros(2)
FAM = ext.family(J2, E1)


def test_parse_tau():
    for v in ("inf", "Infinity", "∞", math.inf, ext.TAU_INF, "+inf"):
        assert ext.parse_tau(v) is ext.TAU_INF
    assert ext.parse_tau("2.5") == 2.5
    with pytest.raises(ValueError):
        ext.parse_tau("nan")
    with pytest.raises(ValueError):
        ext.parse_tau("abc")
    assert str(ext.TAU_INF) == "inf"


def test_restrict_examples(rng):
    assert rel.equal(FAM.restriction, rel.from_pairs([(E2, E1)]))
    assert classify.deficiency_indices(FAM.restriction) == (1, 1)
    j = random_hermitian(rng, 4)
    s = ext.restrict(j, [np.eye(4)[0], np.eye(4)[1]])
    assert classify.deficiency_indices(s) == (2, 2)
    assert classify.is_symmetric(s) and not classify.is_selfadjoint(s)


def test_restrict_rejects(rng):
    with pytest.raises(ValueError):
        ext.restrict(J2, [Z2])
    with pytest.raises(ValueError):
        ext.restrict(J2, [E1, 2 * E1])
    with pytest.raises(ValueError):
        ext.restrict(np.array([[0, 1], [0, 0]]), [E1])
    with pytest.raises(ValueError):
        ext.restrict(J2, [np.ones(3)])


def test_restriction_identity(rng):
    # B_delta = graph(J) ∩ span{(0, delta)}*
    for _ in range(10):
        n = int(rng.integers(2, 6))
        j, d = random_hermitian(rng, n), crandn(rng, n)
        fam = ext.family(j, d)
        mv = rel.from_pairs([(np.zeros(n), d)])
        expected = rel.intersection(rel.from_operator(j), rel.adjoint(mv))
        assert rel.equal(fam.restriction, expected)


def test_extension_tau_examples():
    assert rel.equal(ext.extension_tau(FAM, 0.0), rel.from_operator(J2))
    a = ext.extension_tau(FAM, 2.0, verify=True)
    assert rel.equal(a, rel.from_operator([[2, 1], [1, 0]]))
    w = spectral.spectral_measure(a).eigenvalues
    assert np.allclose(w, [1 - math.sqrt(2), 1 + math.sqrt(2)])
    with pytest.raises(ValueError):
        ext.extension_tau(FAM, "inf")


def test_extensions_contain_restriction(rng):
    n = 5
    fam = ext.family(random_hermitian(rng, n), crandn(rng, n))
    for tau in (-3.0, 0.0, 0.7, 12.0, ext.TAU_INF):
        a = ext.extension(fam, tau, verify=True)
        assert rel.is_subrelation(fam.restriction, a)
        assert classify.is_selfadjoint(a)


def test_extension_infinity_examples():
    a = ext.extension_infinity(FAM, verify=True)
    assert rel.equal(a, rel.from_pairs([(E2, E1), (Z2, E1)]))
    assert np.allclose(spectral.spectral_measure(a).eigenvalues, [0.0])
    assert rel.parts(a).mul.dim == 1 and E1 in rel.parts(a).mul


def test_adjoint_of_restriction(rng):
    for _ in range(5):
        n = 4
        j, d = random_hermitian(rng, n), crandn(rng, n)
        fam = ext.family(j, d)
        star = rel.adjoint(fam.restriction)
        expected = rel.direct_sum(rel.from_operator(j), rel.from_pairs([(np.zeros(n), d)]))
        assert rel.equal(star, expected)
        for tau in (0.0, 1.5, ext.TAU_INF):
            assert rel.is_subrelation(ext.extension(fam, tau), star)


def test_parameterization_injective(rng):
    n = 4
    fam = ext.family(random_hermitian(rng, n), crandn(rng, n))
    taus = [-2.0, 0.0, 0.5, 3.0, ext.TAU_INF]
    rels = [ext.extension(fam, t) for t in taus]
    for i in range(len(rels)):
        for k in range(i + 1, len(rels)):
            assert not rel.equal(rels[i], rels[k])


def test_extension_with_eigenvalue_examples():
    s = FAM.restriction
    a = ext.extension_with_eigenvalue(s, 0.0)
    assert rel.equal(a, rel.from_pairs([(E2, E1), (E2, Z2)]))
    assert rel.equal(a, ext.extension_infinity(FAM))
    assert classify.eigenvalue_multiplicity(a, 0.0) == 1

    a = ext.extension_with_eigenvalue(s, 1j)
    assert classify.is_maximal_dissipative(a) and not classify.is_selfadjoint(a)
    assert classify.eigenvalue_multiplicity(a, 1j) == 1
    with pytest.raises(ValueError):
        ext.extension_with_eigenvalue(s, -1j)


def test_extension_with_eigenvalue_multiplicity_bound(rng):
    for _ in range(10):
        n = int(rng.integers(3, 6))
        k = int(rng.integers(1, 3))
        s = ext.restrict(random_hermitian(rng, n), list(crandn(rng, k, n)))
        lam = complex(rng.normal(), abs(rng.normal()) * rng.integers(0, 2))
        a = ext.extension_with_eigenvalue(s, lam)
        mu = classify.eigenvalue_multiplicity(a, lam)
        assert 1 <= mu <= classify.deficiency(s, -1j).index


def test_extension_with_eigenvalue_rejects():
    j = np.diag([0.0, 1.0, 2.0])
    s = ext.restrict(j, [np.array([1.0, 1.0, 0.0])])
    with pytest.raises(LambdaNotQuasiRegular):
        ext.extension_with_eigenvalue(s, 2.0)
    with pytest.raises(ValueError):
        ext.extension_with_eigenvalue(rel.from_operator([[0, 1], [0, 0]]), 1j)


def test_two_defect(rng):
    n = 4
    td = ext.two_defect(random_hermitian(rng, n), np.eye(n)[0], np.eye(n)[1])
    assert classify.deficiency_indices(td.restriction) == (2, 2)
    m1, m2 = rel.parts(td.ext1).mul, rel.parts(td.ext2).mul
    assert np.eye(n)[0] in m1 and np.eye(n)[1] in m2
    assert not rel.equal(td.ext1, td.ext2)
    with pytest.raises(ValueError):
        ext.two_defect(np.eye(2), E1, E1 + E2)


def test_is_generating_examples():
    assert ext.is_generating(J2, E1)
    assert not ext.is_generating(np.eye(2), crandn(np.random.default_rng(1), 2))
    assert ext.is_generating(ext.jacobi(10), np.eye(10)[0])
    assert ext.krylov_dimension(np.diag([1.0, 1.0, 2.0]), np.ones(3)) == 2
    with pytest.raises(ValueError):
        ext.krylov_dimension(J2, Z2)


def test_generating_delta_gives_no_restriction_eigenvalues(rng):
    for _ in range(10):
        n = int(rng.integers(2, 7))
        j, d = random_hermitian(rng, n), crandn(rng, n)
        assert ext.is_generating(j, d)
        assert spectral.point_spectrum(ext.restrict(j, [d])).eigenvalues == ()


def test_jacobi_examples():
    assert np.allclose(np.linalg.eigvalsh(ext.jacobi(3)), [-math.sqrt(2), 0, math.sqrt(2)])
    n = 12
    closed = np.sort(2 * np.cos(np.arange(1, n + 1) * np.pi / (n + 1)))
    assert np.allclose(np.linalg.eigvalsh(ext.jacobi(n, 0, 1)), closed)
    assert np.array_equal(ext.jacobi(1, 3.5, []), [[3.5]])
    j = ext.jacobi(3, [1, 2, 3], [0.5, 0.25])
    assert j[0, 0] == 1 and j[1, 2] == j[2, 1] == 0.25
    with pytest.raises(ValueError):
        ext.jacobi(3, 0, [1, 0])
    with pytest.raises(ValueError):
        ext.jacobi(3, [1, 2], 1)
    with pytest.raises(ValueError):
        ext.jacobi(0)


def test_family_sweep_examples(rng):
    rows = ext.family_sweep(FAM, ["inf", 0.0])
    assert [r.tau for r in rows] == [0.0, ext.TAU_INF]
    assert rows[0].eigenvalues == pytest.approx((-1, 1))
    assert rows[1].eigenvalues == pytest.approx((0,), abs=1e-12)

    n = 6
    j = random_hermitian(rng, n)
    fam = ext.family(j, crandn(rng, n))
    (row,) = ext.family_sweep(fam, [0.0])
    assert np.allclose(row.eigenvalues, np.linalg.eigvalsh(j))


def test_family_sweep_monotone(rng):
    for _ in range(5):
        n = 5
        d = crandn(rng, n)
        fam = ext.family(random_hermitian(rng, n), d / np.linalg.norm(d))
        taus = np.linspace(-5, 5, 21)
        rows = ext.family_sweep(fam, taus)
        curves = np.array([r.eigenvalues for r in rows])
        assert np.all(np.diff(curves, axis=0) >= -1e-10)
        oracle = [np.linalg.eigvalsh(fam.j + t * np.outer(fam.delta, fam.delta.conj())) for t in taus]
        assert np.allclose(curves, oracle)
