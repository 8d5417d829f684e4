import numpy as np
import pytest

from relcalc import relation as rel

# lines recorded by the acceptance suite, echoed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def crandn(rng, *shape):
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_hermitian(rng, n, spectrum=None):
    if spectrum is None:
        h = crandn(rng, n, n)
        return (h + h.conj().T) / 2
    q, _ = np.linalg.qr(crandn(rng, n, n))
    return (q * np.asarray(spectrum, dtype=float)) @ q.conj().T


def random_relation(rng, n, kind=None, tol=1e-10):
    """A random relation in C^n; ``kind`` picks generic, operator or mixed structure."""
    kind = kind or rng.choice(["generic", "operator", "mixed"])
    if kind == "generic":
        d = int(rng.integers(0, 2 * n + 1))
        return rel.from_basis(crandn(rng, 2 * n, d), tol)
    if kind == "operator":
        return rel.from_operator(crandn(rng, n, n), tol)
    # mixed: some operator pairs, some kernel pairs (f, 0), some multivalued pairs (0, g)
    pairs = []
    zero = np.zeros(n)
    for _ in range(int(rng.integers(0, n + 1))):
        pairs.append((crandn(rng, n), crandn(rng, n)))
    for _ in range(int(rng.integers(0, 2))):
        pairs.append((crandn(rng, n), zero))
    for _ in range(int(rng.integers(0, 2))):
        pairs.append((zero, crandn(rng, n)))
    return rel.from_pairs(pairs, tol, n=n)


J2 = np.array([[0.0, 1.0], [1.0, 0.0]])
E1 = np.array([1.0, 0.0])
E2 = np.array([0.0, 1.0])
