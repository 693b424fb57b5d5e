"""Dense linear algebra over two scalar modes: binary64 and exact rationals.

Float-mode quantities live in ordinary ``float64`` numpy arrays; rational-mode
quantities live in ``dtype=object`` arrays holding :class:`fractions.Fraction`
(plain Python ints are accepted as denominators-1 rationals).  All spectral
operations are float-only; identity checks may run in either mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

FLOAT64 = "float64"
RATIONAL = "rational"
MODES = (FLOAT64, RATIONAL)

# Default tolerances.  Safe for dims <= 16 with well separated spectra.
EIG_TOL = 1e-10
IDENTITY_TOL = 1e-9
DEP_TOL = 1e-12
UNIT_TOL = 1e-12
SYM_TOL = 1e-10


class PreconditionError(ValueError):
    """An operation was called outside its stated precondition."""


def is_rational_array(a) -> bool:
    return isinstance(a, np.ndarray) and a.dtype == object


def as_vector(entries, mode=FLOAT64):
    if mode == RATIONAL:
        return np.array([Fraction(e) for e in entries], dtype=object)
    return np.asarray(entries, dtype=np.float64)


def dot(x, y):
    """Standard positive-definite inner product g(x, y)."""
    x = np.asarray(x)
    y = np.asarray(y)
    if x.shape != y.shape:
        raise ValueError(f"dimension mismatch: {x.shape} vs {y.shape}")
    return x.dot(y)


def norm(x):
    return math.sqrt(float(dot(x, x)))


def require_symmetric(m, tol=SYM_TOL):
    m = np.asarray(m)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError("matrix must be square")
    if m.dtype == object:
        if np.any(m != m.T):
            raise ValueError("matrix is not symmetric (rational mode, exact)")
        return m
    scale = max(1.0, float(np.abs(m).max()))
    worst = float(np.abs(m - m.T).max())
    if worst > tol * scale:
        raise ValueError(f"matrix is not symmetric: residual {worst:.3e}")
    return m


def gram_schmidt(vs, dep_tol=DEP_TOL):
    """Orthonormalize a list of float vectors (modified Gram-Schmidt, two passes)."""
    out = []
    for v in vs:
        w = np.asarray(v, dtype=np.float64).copy()
        for _ in range(2):  # re-orthogonalize for 1e-14 level orthogonality
            for u in out:
                w -= u.dot(w) * u
        nw = np.linalg.norm(w)
        if nw <= dep_tol * max(1.0, np.linalg.norm(v)):
            raise ValueError("gram_schmidt: linearly dependent input")
        out.append(w / nw)
    return out


def gram_schmidt_exact(vs):
    """Exact orthogonalization over the rationals.

    Returns ``(basis, sq_norms)`` where the basis is orthogonal (not
    normalized, since square roots leave the rationals) and spans the same
    subspace.  Raises on linearly dependent input.
    """
    basis, sq_norms = [], []
    for v in vs:
        w = np.array([Fraction(e) for e in v], dtype=object)
        for u, n2 in zip(basis, sq_norms):
            c = u.dot(w) / n2
            w = w - c * u
        n2 = w.dot(w)
        if n2 == 0:
            raise ValueError("gram_schmidt_exact: linearly dependent input")
        basis.append(w)
        sq_norms.append(n2)
    return basis, sq_norms


def cluster_eigenvalues(values, cluster_tol):
    """Greedy left-to-right clustering of a sorted value list.

    A value joins the current cluster iff it lies within ``cluster_tol`` of
    the cluster's running mean; centers are the cluster means.
    """
    centers, mults = [], []
    for v in values:
        if centers and abs(v - centers[-1]) <= cluster_tol:
            mults[-1] += 1
            centers[-1] += (v - centers[-1]) / mults[-1]
        else:
            centers.append(v if isinstance(v, Fraction) else float(v))
            mults.append(1)
    return centers, mults


def default_cluster_tol(values):
    """Spec'd default: 1e-6 times the spectral diameter (1 if nearly zero)."""
    if len(values) == 0:
        return 1e-6
    diam = float(max(values)) - float(min(values))
    return 1e-6 * (diam if diam >= 1e-12 else 1.0)


@dataclass(frozen=True)
class SpectralData:
    """Clustered spectrum of a self-adjoint operator.

    ``eigenvalues`` are the distinct clustered centers in ascending order,
    ``multiplicities`` the cluster sizes, and ``eigenbasis`` an orthonormal
    matrix whose columns are grouped to match the clusters.  ``raw`` keeps
    the unclustered ascending eigenvalues.
    """

    eigenvalues: tuple
    multiplicities: tuple
    eigenbasis: np.ndarray
    raw: np.ndarray

    @property
    def dim(self):
        return self.eigenbasis.shape[0]

    def eigenspace(self, index):
        """Columns of the eigenbasis spanning cluster ``index``."""
        start = sum(self.multiplicities[:index])
        return self.eigenbasis[:, start : start + self.multiplicities[index]]


def eigh(m, eig_tol=EIG_TOL, cluster_tol=None):
    """Self-adjoint eigensolver (float mode only)."""
    m = np.asarray(m)
    if m.dtype == object:
        raise PreconditionError("eigh is float-only; eigenvalues are irrational in general")
    require_symmetric(m)
    vals, vecs = np.linalg.eigh(0.5 * (m + m.T))
    if cluster_tol is None:
        cluster_tol = default_cluster_tol(vals)
    centers, mults = cluster_eigenvalues(list(vals), cluster_tol)
    return SpectralData(tuple(centers), tuple(mults), vecs, vals)


def char_poly(m):
    """Monic characteristic polynomial coefficients of a self-adjoint matrix."""
    m = np.asarray(m, dtype=np.float64)
    if m.size == 0:
        return np.array([1.0])
    return np.poly(np.linalg.eigvalsh(0.5 * (m + m.T)))


# ---------------------------------------------------------------------------
# Seeded randomness.
#
# Counter-based generator: Philox4x64 with the 128-bit key
# seed * 2**64 + sample_index.  Per-sample streams are therefore independent
# of the degree of parallelism: sample i always sees the same stream.
# ---------------------------------------------------------------------------

_KEY_MASK = (1 << 64) - 1


def sample_stream(seed, index=0):
    """Generator for sample ``index`` of the run keyed by ``seed`` (Philox)."""
    key = ((int(seed) & _KEY_MASK) << 64) | (int(index) & _KEY_MASK)
    return np.random.Generator(np.random.Philox(key=key))


_MAX_RETRIES = 16


def random_unit_vector(n, stream):
    if n < 1:
        raise ValueError("n must be >= 1")
    for _ in range(_MAX_RETRIES):
        v = stream.standard_normal(n)
        nv = np.linalg.norm(v)
        if nv > 1e-6:
            v = v / nv
            return v / np.linalg.norm(v)
    raise RuntimeError("random_unit_vector: degenerate draws")


def random_orthonormal_pair(n, stream):
    if n < 2:
        raise ValueError("n must be >= 2 for an orthonormal pair")
    for _ in range(_MAX_RETRIES):
        a = stream.standard_normal(n)
        b = stream.standard_normal(n)
        try:
            x, y = gram_schmidt([a, b])
        except ValueError:
            continue
        return x, y
    raise RuntimeError("random_orthonormal_pair: degenerate draws")


def random_orthogonal_matrix(n, stream):
    """Haar-ish random orthogonal matrix via QR of a Gaussian matrix."""
    q, r = np.linalg.qr(stream.standard_normal((n, n)))
    return q * np.sign(np.diag(r))


def random_rational(stream, max_num=9, max_den=9):
    return Fraction(int(stream.integers(-max_num, max_num + 1)),
                    int(stream.integers(1, max_den + 1)))


def random_int_vector(n, stream, max_abs=9):
    """Nonzero integer-component vector (integers are exact rationals)."""
    for _ in range(_MAX_RETRIES):
        v = stream.integers(-max_abs, max_abs + 1, size=n)
        if np.any(v != 0):
            return np.array([int(c) for c in v], dtype=object)
    raise RuntimeError("random_int_vector: degenerate draws")


def clear_denominators(arr):
    """Return ``(numerators, L)`` with ``arr == numerators / L`` exactly.

    ``numerators`` is an object array of Python ints, ``L`` the positive lcm
    of all denominators (1 for integer input).
    """
    flat = arr.reshape(-1)
    L = 1
    for e in flat.tolist():
        if isinstance(e, Fraction):
            L = math.lcm(L, e.denominator)
    if L == 1:
        nums = np.array([int(e) for e in flat.tolist()], dtype=object)
    else:
        nums = np.array(
            [int(e * L) if isinstance(e, Fraction) else int(e) * L for e in flat.tolist()],
            dtype=object,
        )
    return nums.reshape(arr.shape), L
