import itertools

import numpy as np
import pytest

from eisenlab.corering import (
    Modulus,
    berkowitz_charpoly,
    howell_membership,
    howell_solve,
    kernel_of_free_summand,
    kernel_spanning_set,
    restrict_operator,
    unit_echelon,
)

rng = np.random.default_rng(417)


def test_membership_spec_examples():
    mod3 = Modulus(5, 3)
    ok, w = howell_membership(np.array([[5]]), np.array([25]), mod3)
    assert ok and (5 * int(w[0])) % 125 == 25

    mod2 = Modulus(5, 2)
    ok, w = howell_membership(np.array([[5]]), np.array([1]), mod2)
    assert not ok and w is None

    ok, w = howell_membership(np.eye(4), np.array([3, 0, 24, 7]), mod2)
    assert ok and list(w) == [3, 0, 24, 7]


def test_solve_needs_column_exchange():
    # pivoting by column order alone would pick the non-unit pivot and fail
    mod = Modulus(5, 2)
    x = howell_solve(np.array([[5, 1]]), np.array([1]), mod)
    assert x is not None
    assert (5 * x[0] + x[1]) % 25 == 1


def _brute_solvable(A, b, pM):
    n = A.shape[1]
    for xs in itertools.product(range(pM), repeat=n):
        if all(int(A[i] @ np.array(xs)) % pM == b[i] % pM for i in range(A.shape[0])):
            return True
    return False


def test_solve_matches_brute_force_small():
    mod = Modulus(5, 2)
    pM = 25
    for _ in range(60):
        A = rng.integers(0, pM, (2, 2))
        b = rng.integers(0, pM, 2)
        x = howell_solve(A, b, mod)
        if x is not None:
            assert np.all((A @ x) % pM == b % pM)
        else:
            assert not _brute_solvable(A, b, pM)


def test_kernel_spanning_set_property():
    mod = Modulus(5, 2)
    pM = 25
    for _ in range(40):
        A = rng.integers(0, pM, (3, 4))
        K = kernel_spanning_set(A, mod)
        assert np.all((A @ K) % pM == 0)
        # spans: every brute-force kernel vector of a small submodule check
        # is reachable; verify via rank over residues for a few random vecs
        for _ in range(5):
            coeffs = rng.integers(0, pM, K.shape[1])
            v = (K @ coeffs) % pM
            assert np.all((A @ v) % pM == 0)


def test_kernel_spanning_set_exhaustive_tiny():
    mod = Modulus(5, 2)
    pM = 25
    A = np.array([[5, 10], [0, 5]])
    K = kernel_spanning_set(A, mod)
    reachable = set()
    for coeffs in itertools.product(range(pM), repeat=K.shape[1]):
        v = tuple((K @ np.array(coeffs)) % pM)
        reachable.add(v)
    actual = {
        (x, y)
        for x in range(pM)
        for y in range(pM)
        if (5 * x + 10 * y) % pM == 0 and (5 * y) % pM == 0
    }
    assert reachable == actual


def test_unit_echelon_detects_torsion():
    mod = Modulus(5, 2)
    with pytest.raises(ArithmeticError):
        unit_echelon(np.array([[5, 0], [0, 1]]), mod)


def test_kernel_of_free_summand():
    mod = Modulus(5, 3)
    pM = 125
    # projector onto a free summand: kernel is the complement
    P = np.array([[1, 0, 0], [0, 0, 0], [0, 0, 1]])
    K = kernel_of_free_summand(P, mod)
    assert K.shape == (3, 1)
    assert np.all((P @ K) % pM == 0)


def test_restrict_operator():
    mod = Modulus(5, 2)
    T = np.array([[2, 0, 0], [0, 3, 0], [0, 1, 3]])
    basis = np.array([[0, 0], [1, 0], [0, 1]])  # T-invariant
    R = restrict_operator(T, basis, mod)
    assert np.array_equal(R, np.array([[3, 0], [1, 3]]))
    bad = np.array([[1], [0], [0]])
    with pytest.raises(ArithmeticError):
        restrict_operator(np.array([[0, 1, 0], [0, 0, 0], [1, 0, 0]]), bad, mod)


# -- Berkowitz ----------------------------------------------------------------


def _charpoly_integer(A):
    """Exact integer char poly of a small matrix via cofactor expansion on
    polynomial entries (independent oracle)."""
    n = A.shape[0]

    def pmul(f, g):
        out = [0] * (len(f) + len(g) - 1)
        for i, x in enumerate(f):
            for j, y in enumerate(g):
                out[i + j] += x * y
        return out

    def padd(f, g):
        k = max(len(f), len(g))
        f = f + [0] * (k - len(f))
        g = g + [0] * (k - len(g))
        return [x + y for x, y in zip(f, g)]

    def det(rows, cols):
        if len(rows) == 1:
            i, j = rows[0], cols[0]
            e = [-int(A[i, j])]
            if i == j:
                e = padd(e, [0, 1])
            return e
        acc = [0]
        for k, j in enumerate(cols):
            i = rows[0]
            e = [-int(A[i, j])]
            if i == j:
                e = padd(e, [0, 1])
            minor = det(rows[1:], cols[:k] + cols[k + 1 :])
            term = pmul(e, minor)
            if k % 2 == 1:
                term = [-x for x in term]
            acc = padd(acc, term)
        return acc

    return det(list(range(n)), list(range(n)))


def test_berkowitz_examples():
    mod = Modulus(5, 2)
    cp = berkowitz_charpoly(np.eye(2), mod)
    assert cp.coeffs == [1, 23, 1]  # (y-1)^2 = y^2 - 2y + 1
    cp = berkowitz_charpoly(np.diag([2, 3]), mod)
    assert cp.coeffs == [6, 20, 1]  # y^2 - 5y + 6


@pytest.mark.parametrize("p,M,n", [(5, 3, 4), (7, 2, 5), (5, 2, 3), (11, 2, 5)])
def test_berkowitz_matches_integer_oracle(p, M, n):
    mod = Modulus(p, M)
    for _ in range(8):
        A = rng.integers(0, mod.pM, (n, n))
        got = berkowitz_charpoly(A, mod).coeffs
        want = [c % mod.pM for c in _charpoly_integer(A)]
        assert got == want
