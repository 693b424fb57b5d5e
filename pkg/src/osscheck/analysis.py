"""Property checkers: Osserman, Jacobi-duality, Jacobi-orthogonality,
Einstein, root structure, and the proof-step identities.

All checkers are pure given (tensor, seed): sample i always draws from the
per-sample stream keyed by (seed, i), so results are independent of any
parallel scheduling of the sample loop.  Sampling checkers certify "no
counterexample found", not a proof.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .curvature import (
    CurvatureTensor,
    _jacobi_numerators,
    eval_tensor,
    jacobi_matrix,
    reduced_jacobi,
    ricci_operator,
)
from .linalg import (
    FLOAT64,
    IDENTITY_TOL,
    RATIONAL,
    PreconditionError,
    char_poly,
    cluster_eigenvalues,
    default_cluster_tol,
    eigh,
    random_int_vector,
    random_orthogonal_matrix,
    random_orthonormal_pair,
    random_unit_vector,
    sample_stream,
)
from .report import CheckReport, make_report

_SAMPLING_NOTE = "sampling check: pass means no counterexample found"


def _norm(v):
    return float(np.linalg.norm(np.asarray(v, dtype=np.float64)))


def _exact_orthogonal_pair(n, stream):
    """Exact rational pair (x, y) with g(x, y) = 0 via projection."""
    for _ in range(16):
        x = random_int_vector(n, stream)
        y = random_int_vector(n, stream)
        eps_x = x.dot(x)
        y = eps_x * y - y.dot(x) * x
        if np.any(y != 0):
            return x, y
    raise RuntimeError("degenerate rational draws")


_INT64_SAFE = float(2**62)


def _int_matvec(m, v):
    """m @ v for integer data, staying in int64 only when provably safe."""
    v64 = np.asarray([int(c) for c in v], dtype=np.int64)
    if m.dtype == np.int64:
        bound = float(np.abs(m).max()) * m.shape[1] * float(np.abs(v64).max())
        if 1.1 * bound < _INT64_SAFE:
            return m @ v64
        m = np.asarray(m.tolist(), dtype=object)
    return m.dot(np.asarray(v64.tolist(), dtype=object))


def _int_dot(u, v):
    """Overflow-free inner product of two integer vectors (Python ints)."""
    return sum(int(a) * int(b) for a, b in zip(u, v))


def check_jacobi_orthogonal(R: CurvatureTensor, samples=1000, seed=0,
                            tol=None, mode=None) -> CheckReport:
    """J_X Y perpendicular to J_Y X over random orthogonal pairs.

    Rational mode is exact: pairs are forced orthogonal by projection and
    the residual is the exact inner product (tolerance 0).
    """
    if R.dim < 2:
        raise PreconditionError("need dimension >= 2")
    if mode is None:
        mode = R.mode
    if mode == RATIONAL and R.mode != RATIONAL:
        raise PreconditionError("rational-mode check needs a rational tensor")
    if tol is None:
        tol = 0 if mode == RATIONAL else IDENTITY_TOL
    worst, witness = 0, {}
    for i in range(samples):
        stream = sample_stream(seed, i)
        if mode == RATIONAL:
            x, y = _exact_orthogonal_pair(R.dim, stream)
            mx, dx = _jacobi_numerators(R, x)
            my, dy = _jacobi_numerators(R, y)
            num = _int_dot(_int_matvec(mx, y), _int_matvec(my, x))
            res = abs(Fraction(num, dx * dy))
        else:
            x, y = random_orthonormal_pair(R.dim, stream)
            jxy = jacobi_matrix(R, x).dot(y)
            jyx = jacobi_matrix(R, y).dot(x)
            res = abs(float(jxy.dot(jyx))) / (_norm(jxy) * _norm(jyx) + 1.0)
        if res > worst or not witness:
            worst = res
            witness = {"sample": i, "x": list(x), "y": list(y)}
    return make_report("jacobi-orthogonal", worst, witness, samples, seed,
                       tol, mode, notes=_SAMPLING_NOTE, provenance=R.provenance)


def _eigenvectors_with_values(R, x, cluster_tol=None):
    """Ambient eigenvectors of the reduced Jacobi at unit x, with centers."""
    red = reduced_jacobi(R, x)
    sd = eigh(red.matrix, cluster_tol=cluster_tol)
    out = []
    for idx, lam in enumerate(sd.eigenvalues):
        cols = red.frame @ sd.eigenspace(idx)
        out.append((float(lam), cols))
    return red, sd, out


def check_jacobi_dual(R: CurvatureTensor, samples=1000, seed=0,
                      tol=IDENTITY_TOL) -> CheckReport:
    """J_X Y = lambda Y implies J_Y X = lambda X, over eigenvectors of J_X.

    Each clustered eigenspace is tested on its full orthonormal basis plus
    three random unit combinations inside the eigenspace (the Jacobi operator
    is quadratic in its base, so basis vectors alone do not suffice).
    """
    Rf = R.to_float()
    worst, witness = 0.0, {}
    for i in range(samples):
        stream = sample_stream(seed, i)
        x = random_unit_vector(R.dim, stream)
        _, _, spaces = _eigenvectors_with_values(Rf, x)
        # J_y x = sum_{j,k} t[j, k, w] y_j y_k with t = R contracted with x:
        # one n^4 contraction per sample instead of one per candidate y
        t = np.tensordot(Rf.components, x, axes=([0], [0]))
        for lam, cols in spaces:
            cand = [cols[:, j] for j in range(cols.shape[1])]
            if cols.shape[1] > 1:
                for _ in range(3):
                    c = stream.standard_normal(cols.shape[1])
                    v = cols @ c
                    cand.append(v / np.linalg.norm(v))
            for y in cand:
                jyx = y @ np.tensordot(t, y, axes=([0], [0]))
                res = _norm(jyx - lam * x) / (1.0 + abs(lam))
                if res > worst or not witness:
                    worst = res
                    witness = {"sample": i, "x": list(x), "y": list(y),
                               "eigenvalue": lam}
    return make_report("jacobi-dual", worst, witness, samples, seed, tol,
                       FLOAT64, notes=_SAMPLING_NOTE, provenance=R.provenance)


def reduced_char_poly(R: CurvatureTensor, x):
    return char_poly(reduced_jacobi(R.to_float(), x).matrix)


def check_osserman(R: CurvatureTensor, samples=1000, seed=0,
                   tol=IDENTITY_TOL) -> CheckReport:
    """Constancy of the reduced Jacobi characteristic polynomial over unit X.

    Coefficients are taken for the spectrally normalized operator (eigenvalues
    divided by the reference spectral radius): without this, a coefficient
    whose exact value is 0 drowns in the float noise of the large ones and no
    uniform tolerance works across dimensions.
    """
    Rf = R.to_float()
    x0 = random_unit_vector(R.dim, sample_stream(seed, 0))
    vals0 = np.linalg.eigvalsh(reduced_jacobi(Rf, x0).matrix)
    spectral_scale = max(1.0, float(np.abs(vals0).max()))
    ref = np.poly(vals0 / spectral_scale)
    scale = 1.0 + np.abs(ref)
    worst = 0.0
    witness = {"reference_x": list(x0), "reference_coefficients": list(ref)}
    for i in range(1, samples):
        x = random_unit_vector(R.dim, sample_stream(seed, i))
        vals = np.linalg.eigvalsh(reduced_jacobi(Rf, x).matrix)
        coeffs = np.poly(vals / spectral_scale)
        res = float((np.abs(coeffs - ref) / scale).max())
        if res > worst:
            worst = res
            witness = {"sample": i, "x": list(x),
                       "coefficients": list(coeffs),
                       "reference_x": list(x0),
                       "reference_coefficients": list(ref)}
    return make_report("osserman", worst, witness, samples, seed, tol,
                       FLOAT64, notes=_SAMPLING_NOTE, provenance=R.provenance)


def check_einstein(R: CurvatureTensor, tol=IDENTITY_TOL) -> CheckReport:
    """Ricci operator equals a scalar multiple of the identity."""
    ric = ricci_operator(R)
    n = R.dim
    if R.mode == RATIONAL:
        tr = sum(ric[i, i] for i in range(n))
        const = Fraction(tr, 1) / n
        dev = ric - const * np.eye(n, dtype=np.int64).astype(object)
        worst = max(abs(v) for v in dev.reshape(-1))
        if tol == IDENTITY_TOL:
            tol = 0
    else:
        const = float(np.trace(ric)) / n
        worst = float(np.abs(ric - const * np.eye(n)).max())
    return make_report("einstein", worst, {"einstein_constant": const},
                       samples=1, seed=0, tol=tol, mode=R.mode,
                       provenance=R.provenance)


@dataclass
class RootClassification:
    """Root structure of the reduced Jacobi spectrum over sampled directions."""

    k: int
    centers: list
    multiplicities: list
    per_sample_agreement: bool
    samples: int = 0
    seed: int = 0


def classify_k_root(R: CurvatureTensor, samples=100, seed=0,
                    cluster_tol=None) -> RootClassification:
    Rf = R.to_float()
    ref = None
    agree = True
    tol_used = cluster_tol
    for i in range(samples):
        x = random_unit_vector(R.dim, sample_stream(seed, i))
        red = reduced_jacobi(Rf, x)
        vals = np.linalg.eigvalsh(red.matrix)
        ct = cluster_tol if cluster_tol is not None else default_cluster_tol(vals)
        tol_used = ct
        centers, mults = cluster_eigenvalues(list(vals), ct)
        if ref is None:
            ref = (centers, mults)
        else:
            same_shape = mults == ref[1]
            same_centers = same_shape and all(
                abs(c - rc) <= ct for c, rc in zip(centers, ref[0]))
            if not (same_shape and same_centers):
                agree = False
    return RootClassification(k=len(ref[0]), centers=ref[0],
                              multiplicities=ref[1],
                              per_sample_agreement=agree,
                              samples=samples, seed=seed)


def check_two_root_decomposition(R: CurvatureTensor, samples=500, seed=0,
                                 tol=IDENTITY_TOL) -> CheckReport:
    """Two-root eigenspace identity for g(J_X Y, J_Y X).

    For each sample: eigendecompose the reduced Jacobi at unit Y, split a
    random X in Y-perp into eigenspace components X1 + X2, and compare
    g(J_X Y, J_Y X) against (l2 - l1)(g(J_X1 Y, X2) - g(J_X2 Y, X1)); the
    duality by-products g(J_X1 Y, X2) and g(J_X2 Y, X1) are also required
    to vanish.
    """
    cls = classify_k_root(R, samples=min(samples, 16), seed=seed)
    if cls.k != 2 or not cls.per_sample_agreement:
        raise PreconditionError(
            f"two-root decomposition needs a stable two-root tensor "
            f"(found k={cls.k}, agreement={cls.per_sample_agreement})")
    Rf = R.to_float()
    gap_tol = abs(cls.centers[1] - cls.centers[0]) / 4.0
    worst, witness = 0.0, {}
    for i in range(samples):
        stream = sample_stream(seed, i)
        y = random_unit_vector(R.dim, stream)
        _, _, spaces = _eigenvectors_with_values(Rf, y, cluster_tol=gap_tol)
        if len(spaces) != 2:
            raise PreconditionError(
                f"sample {i} produced {len(spaces)} eigenvalue clusters")
        (l1, v1), (l2, v2) = spaces
        xr = stream.standard_normal(R.dim)
        xr -= xr.dot(y) * y
        x = xr / np.linalg.norm(xr)
        x1 = v1 @ (v1.T @ x)
        x2 = v2 @ (v2.T @ x)
        lhs = float(jacobi_matrix(Rf, x).dot(y).dot(jacobi_matrix(Rf, y).dot(x)))
        b1 = float(jacobi_matrix(Rf, x1).dot(y).dot(x2))
        b2 = float(jacobi_matrix(Rf, x2).dot(y).dot(x1))
        rhs = (l2 - l1) * (b1 - b2)
        span = 1.0 + abs(l2 - l1)
        res = max(abs(lhs - rhs) / (1.0 + abs(lhs)),
                  abs(b1) / span, abs(b2) / span)
        if res > worst or not witness:
            worst = res
            witness = {"sample": i, "y": list(y), "x": list(x),
                       "lambda1": l1, "lambda2": l2,
                       "lhs": lhs, "rhs": rhs, "byproducts": [b1, b2]}
    return make_report("two-root-decomposition", worst, witness, samples,
                       seed, tol, FLOAT64, notes=_SAMPLING_NOTE,
                       provenance=R.provenance)


def _triples(count, stream, total):
    """Random distinct index triples out of ``total`` eigenvectors."""
    seen = set()
    for _ in range(count * 4):
        t = tuple(sorted(stream.choice(total, size=3, replace=False).tolist()))
        if t not in seen:
            seen.add(t)
            yield t
            if len(seen) >= count:
                return


def check_eigen_bianchi_identity(R: CurvatureTensor, samples=100, seed=0,
                                 tol=IDENTITY_TOL, random_triples=40,
                                 precheck_samples=50) -> CheckReport:
    """Eigenvalue-weighted Bianchi identity for Osserman tensors.

    For mutually orthogonal eigenvectors A, B, C of J_X with eigenvalues
    lA, lB, lC:

        R(X,A,B,C)(lC - 2 lB + lA) + R(X,B,A,C)(lC + lB - 2 lA) = 0.

    Triples are exhaustive over the eigenbasis when n-1 <= 8, randomized
    otherwise.  Precondition: the tensor samples as Osserman.
    """
    pre = check_osserman(R, samples=precheck_samples, seed=seed, tol=1e-6)
    if not pre.passed:
        raise PreconditionError(
            f"eigen-Bianchi identity assumes an Osserman tensor "
            f"(osserman residual {pre.worst_residual:.3e})")
    Rf = R.to_float()
    n = R.dim
    comp = Rf.components
    worst, witness = 0.0, {}
    import itertools
    for i in range(samples):
        stream = sample_stream(seed, i)
        x = random_unit_vector(n, stream)
        red = reduced_jacobi(Rf, x)
        vals, vecs = np.linalg.eigh(red.matrix)
        ambient = red.frame @ vecs
        t = np.tensordot(comp, x, axes=([0], [0]))  # t[j, k, l]
        # contract all three slots with the eigenbasis once, so each triple
        # is a table lookup: c3[a, b, c] = R(X, A_a, B_b, C_c)
        c3 = np.tensordot(t, ambient, axes=([0], [0]))
        c3 = np.tensordot(c3, ambient, axes=([0], [0]))
        c3 = np.tensordot(c3, ambient, axes=([0], [0]))
        if n - 1 <= 8:
            triples = itertools.combinations(range(n - 1), 3)
        else:
            triples = _triples(random_triples, stream, n - 1)
        for (ia, ib, ic) in triples:
            la, lb, lc = vals[ia], vals[ib], vals[ic]
            r_abc = float(c3[ia, ib, ic])
            r_bac = float(c3[ib, ia, ic])
            lhs = r_abc * (lc - 2 * lb + la) + r_bac * (lc + lb - 2 * la)
            res = abs(lhs) / (1.0 + abs(r_abc) + abs(r_bac))
            if res > worst or not witness:
                worst = res
                witness = {"sample": i, "x": list(x),
                           "triple": [int(ia), int(ib), int(ic)],
                           "eigenvalues": [float(la), float(lb), float(lc)],
                           "r_xabc": r_abc, "r_xbac": r_bac}
    return make_report("eigen-bianchi", worst, witness, samples, seed, tol,
                       FLOAT64, notes=_SAMPLING_NOTE, provenance=R.provenance)


def check_polarization(R: CurvatureTensor, samples=200, seed=0, tol=None,
                       mode=None) -> CheckReport:
    """Polarization identities of the Jacobi operator at arbitrary X, Y:

        J_{X+Y}(X-Y) = 2 (J_Y X - J_X Y)
        J_{X-Y}(X+Y) = 2 (J_Y X + J_X Y)
        J_{X+Y} + J_{X-Y} = 2 J_X + 2 J_Y   (as matrices)

    Exact in rational mode.
    """
    if mode is None:
        mode = R.mode
    if mode == RATIONAL and R.mode != RATIONAL:
        raise PreconditionError("rational-mode check needs a rational tensor")
    if tol is None:
        tol = 0 if mode == RATIONAL else IDENTITY_TOL
    worst, witness = 0, {}
    for i in range(samples):
        stream = sample_stream(seed, i)
        if mode == RATIONAL:
            x = random_int_vector(R.dim, stream)
            y = random_int_vector(R.dim, stream)
        else:
            x = stream.standard_normal(R.dim)
            y = stream.standard_normal(R.dim)
        jx, jy = jacobi_matrix(R, x), jacobi_matrix(R, y)
        jp, jm = jacobi_matrix(R, x + y), jacobi_matrix(R, x - y)
        r1 = jp.dot(x - y) - 2 * (jy.dot(x) - jx.dot(y))
        r2 = jm.dot(x + y) - 2 * (jy.dot(x) + jx.dot(y))
        r3 = jp + jm - 2 * jx - 2 * jy
        if mode == RATIONAL:
            res = max(max(abs(v) for v in r1), max(abs(v) for v in r2),
                      max(abs(v) for v in r3.reshape(-1)))
        else:
            scale = 1.0 + _norm(jx.dot(y)) + _norm(jy.dot(x))
            res = max(_norm(r1), _norm(r2), float(np.abs(r3).max())) / scale
        if res > worst or not witness:
            worst = res
            witness = {"sample": i, "x": list(x), "y": list(y)}
    return make_report("polarization", worst, witness, samples, seed, tol,
                       mode, provenance=R.provenance)


def check_ricci_sum(R: CurvatureTensor, tol=1e-12, bases=3,
                    seed=0) -> CheckReport:
    """Ricci operator equals the sum of Jacobi operators over any
    orthonormal basis; checked on the standard basis (independent route)
    and ``bases`` random orthonormal bases (float).
    """
    n = R.dim
    ric = ricci_operator(R)
    if R.mode == RATIONAL:
        acc = None
        eye = np.eye(n, dtype=np.int64).astype(object)
        for i in range(n):
            jm = jacobi_matrix(R, eye[:, i])
            acc = jm if acc is None else acc + jm
        worst_std = max(abs(v) for v in (acc - ric).reshape(-1))
    else:
        acc = sum(jacobi_matrix(R, np.eye(n)[:, i]) for i in range(n))
        worst_std = float(np.abs(acc - ric).max())
    ric_f = np.asarray(ric, dtype=np.float64)
    Rf = R.to_float()
    worst_rand = 0.0
    for b in range(bases):
        q = random_orthogonal_matrix(n, sample_stream(seed, b))
        acc = sum(jacobi_matrix(Rf, q[:, i]) for i in range(n))
        scale = 1.0 + float(np.abs(ric_f).max())
        worst_rand = max(worst_rand, float(np.abs(acc - ric_f).max()) / scale)
    worst = max(float(worst_std), worst_rand)
    return make_report("ricci-sum", worst,
                       {"standard_basis_residual": worst_std,
                        "random_basis_residual": worst_rand},
                       samples=bases + 1, seed=seed, tol=tol, mode=R.mode,
                       provenance=R.provenance)
