import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from osscheck.linalg import (
    PreconditionError,
    char_poly,
    cluster_eigenvalues,
    default_cluster_tol,
    dot,
    eigh,
    gram_schmidt,
    gram_schmidt_exact,
    random_int_vector,
    random_orthonormal_pair,
    random_unit_vector,
    sample_stream,
)


def e(i, n):
    v = np.zeros(n)
    v[i] = 1.0
    return v


class TestDot:
    def test_orthonormal_basis(self):
        assert dot(e(0, 3), e(0, 3)) == 1.0
        assert dot(e(0, 3), e(1, 3)) == 0.0

    def test_arithmetic(self):
        assert dot(np.array([1.0, 2.0]), np.array([3.0, 4.0])) == 11.0

    def test_rational_exact(self):
        x = np.array([Fraction(1, 3), Fraction(2, 7)], dtype=object)
        y = np.array([Fraction(3), Fraction(7, 2)], dtype=object)
        assert dot(x, y) == Fraction(2)

    def test_dimension_mismatch(self):
        with pytest.raises(ValueError):
            dot(np.zeros(2), np.zeros(3))


class TestGramSchmidt:
    def test_two_vectors(self):
        out = gram_schmidt([np.array([1.0, 0.0]), np.array([1.0, 1.0])])
        assert np.allclose(out[0], [1, 0])
        assert np.allclose(out[1], [0, 1])

    def test_already_unit(self):
        out = gram_schmidt([e(2, 4)])
        assert np.allclose(out[0], e(2, 4))

    def test_gram_matrix_oracle(self):
        # independent oracle: recompute the full Gram matrix of the output
        vs = [np.array([1.0, 1.0, 0.0]), np.array([0.0, 1.0, 1.0])]
        out = gram_schmidt(vs)
        gram = np.array([[dot(a, b) for b in out] for a in out])
        assert np.abs(gram - np.eye(2)).max() <= 1e-14

    def test_dependent_input(self):
        with pytest.raises(ValueError):
            gram_schmidt([np.array([1.0, 2.0]), np.array([2.0, 4.0])])

    def test_exact_orthogonal(self):
        vs = [[1, 1, 0], [0, 1, 1], [1, 0, 1]]
        basis, sq = gram_schmidt_exact(vs)
        for i in range(3):
            assert basis[i].dot(basis[i]) == sq[i]
            for j in range(i):
                assert basis[i].dot(basis[j]) == 0

    def test_exact_dependent(self):
        with pytest.raises(ValueError):
            gram_schmidt_exact([[1, 2], [2, 4]])


class TestEigh:
    def test_identity(self):
        sd = eigh(np.eye(3))
        assert sd.eigenvalues == (1.0,)
        assert sd.multiplicities == (3,)

    def test_diag(self):
        sd = eigh(np.diag([2.0, -1.0]))
        assert sd.eigenvalues == (-1.0, 2.0)
        assert sd.multiplicities == (1, 1)

    def test_rejects_nonsymmetric(self):
        with pytest.raises(ValueError):
            eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_rejects_rational(self):
        with pytest.raises(PreconditionError):
            eigh(np.array([[Fraction(1), Fraction(0)],
                           [Fraction(0), Fraction(2)]], dtype=object))

    @pytest.mark.parametrize("n", [2, 5, 17, 32])
    def test_reconstruction(self, n):
        g = sample_stream(7, n)
        a = g.standard_normal((n, n))
        m = 0.5 * (a + a.T)
        sd = eigh(m)
        q, lam = sd.eigenbasis, sd.raw
        recon = q @ np.diag(lam) @ q.T
        scale = np.abs(m).max()
        assert np.abs(recon - m).max() <= 1e-12 * max(scale, 1.0)
        assert np.abs(q.T @ q - np.eye(n)).max() <= 1e-10
        for i in range(n):
            assert np.linalg.norm(m @ q[:, i] - lam[i] * q[:, i]) <= 1e-10 * max(scale, 1.0)


class TestClusterEigenvalues:
    def test_near_duplicates(self):
        centers, mults = cluster_eigenvalues([1.0, 1.0 + 1e-12, 4.0], 1e-9)
        assert mults == [2, 1]
        assert abs(centers[0] - 1.0) < 1e-12 and centers[1] == 4.0

    def test_singleton(self):
        assert cluster_eigenvalues([5.0], 0.1) == ([5.0], [1])

    def test_running_mean_rule(self):
        # hand-run of the greedy rule on the spec example
        centers, mults = cluster_eigenvalues([0.9999, 1.0001, 1.9], 1e-3)
        assert mults == [2, 1]
        assert abs(centers[0] - 1.0) <= 1e-12
        assert centers[1] == 1.9

    def test_empty(self):
        assert cluster_eigenvalues([], 1.0) == ([], [])

    def test_default_tol(self):
        assert default_cluster_tol([1.0, 4.0]) == pytest.approx(3e-6)
        assert default_cluster_tol([2.0, 2.0]) == pytest.approx(1e-6)


class TestRandomness:
    def test_n1_is_sign(self):
        v = random_unit_vector(1, sample_stream(0, 0))
        assert abs(abs(v[0]) - 1.0) < 1e-15

    def test_determinism(self):
        a = random_unit_vector(4, sample_stream(5, 9))
        b = random_unit_vector(4, sample_stream(5, 9))
        assert np.array_equal(a, b)

    def test_streams_differ(self):
        a = random_unit_vector(4, sample_stream(5, 0))
        b = random_unit_vector(4, sample_stream(5, 1))
        assert not np.allclose(a, b)

    def test_unit_norm(self):
        for i in range(50):
            v = random_unit_vector(8, sample_stream(1, i))
            assert abs(np.linalg.norm(v) - 1.0) <= 1e-14

    def test_pair_orthonormal(self):
        for i in range(50):
            x, y = random_orthonormal_pair(8, sample_stream(2, i))
            assert abs(np.linalg.norm(x) - 1.0) <= 1e-14
            assert abs(np.linalg.norm(y) - 1.0) <= 1e-14
            assert abs(dot(x, y)) <= 1e-14

    def test_int_vector_nonzero(self):
        v = random_int_vector(6, sample_stream(3, 0))
        assert any(c != 0 for c in v)


@given(st.tuples(*(st.integers(-10**6, 10**6) for _ in range(2)),
                 *(st.integers(1, 10**6) for _ in range(2)),
                 st.integers(-10**6, 10**6), st.integers(1, 10**6)))
@settings(max_examples=1000, deadline=None)
def test_rational_arithmetic_exact(args):
    # cross-multiplication oracle: a/b + c/d == (ad + cb) / bd, exactly
    a, c, b, d, p, q = args
    x, y = Fraction(a, b), Fraction(c, d)
    assert x + y == Fraction(a * d + c * b, b * d)
    assert x * y == Fraction(a * c, b * d)
    z = Fraction(p, q)
    if z != 0:
        assert (x / z) * z == x
    assert x - y == Fraction(a * d - c * b, b * d)


def test_char_poly_matches_roots():
    g = sample_stream(11)
    a = g.standard_normal((6, 6))
    m = 0.5 * (a + a.T)
    coeffs = char_poly(m)
    vals = np.linalg.eigvalsh(m)
    # monic polynomial vanishes at each eigenvalue
    for v in vals:
        assert abs(np.polyval(coeffs, v)) <= 1e-8 * (1 + abs(v)) ** 6
