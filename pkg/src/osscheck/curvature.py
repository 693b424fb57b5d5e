"""Curvature tensors on a scalar product space and their Jacobi operators.

Sign convention (re-derived, the master sign oracle of the repo): the unit
constant-curvature tensor is

    R1(X, Y, Z, W) = g(X, W) g(Y, Z) - g(X, Z) g(Y, W),

and the Jacobi operator is read off through g(J_X Y, W) = R(Y, X, X, W).
With these choices R1 gives J_X Y = eps_X Y - g(Y, X) X, and for a
skew-adjoint complex structure J the generated tensor R^J gives
J_X Y = -3 g(Y, JX) JX, i.e. exactly the mu_0 and mu_i terms of the Clifford
Jacobi operator.  Changing either sign breaks that match.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import numpy as np

from .clifford import CliffordFamily, validate_hurwitz
from .linalg import (
    FLOAT64,
    IDENTITY_TOL,
    RATIONAL,
    UNIT_TOL,
    PreconditionError,
    clear_denominators,
    require_symmetric,
)
from .report import make_report

_INT64_SAFE = float(2**62)


def _object_array(nested):
    a = np.array(nested, dtype=object)
    return a


def _int_components_to_mode(acc, denom, mode):
    """Turn an integer component array ``acc / denom`` into mode storage."""
    if mode == FLOAT64:
        return np.asarray(acc, dtype=np.float64) / denom
    if denom == 1:
        return _object_array(acc.tolist())
    flat = [Fraction(int(v), denom) for v in acc.reshape(-1)]
    return np.array(flat, dtype=object).reshape(acc.shape)


@dataclass(frozen=True)
class CurvatureTensor:
    """Dense rank-4 curvature tensor in the standard orthonormal basis.

    ``components[i, j, k, l] = R(e_i, e_j, e_k, e_l)``, row-major.  Immutable
    after construction; all operations on it are pure.
    """

    dim: int
    mode: str
    components: np.ndarray
    provenance: str = ""

    def __post_init__(self):
        c = self.components
        if c.shape != (self.dim,) * 4:
            raise ValueError("components must be an n^4 array")
        if self.mode == RATIONAL and c.dtype != object:
            raise ValueError("rational mode requires object components")
        if self.mode == FLOAT64 and c.dtype != np.float64:
            raise ValueError("float64 mode requires float64 components")
        c.setflags(write=False)

    @cached_property
    def float_components(self):
        if self.mode == FLOAT64:
            return self.components
        return np.asarray(self.components, dtype=np.float64)

    def to_float(self) -> "CurvatureTensor":
        if self.mode == FLOAT64:
            return self
        return CurvatureTensor(self.dim, FLOAT64, self.float_components.copy(),
                               self.provenance)

    @cached_property
    def _exact_form(self):
        """(numerators, lcm, int64 view or None, max |numerator|) for rational mode."""
        nums, L = clear_denominators(self.components)
        try:
            n64 = np.asarray(nums.tolist(), dtype=np.int64)
        except OverflowError:
            n64 = None
        nmax = None if n64 is None else float(np.abs(n64).max())
        return nums, L, n64, nmax

    def scaled(self, c) -> "CurvatureTensor":
        if self.mode == RATIONAL:
            comp = self.components * Fraction(c)
        else:
            comp = self.components * float(c)
        return CurvatureTensor(self.dim, self.mode, comp,
                               f"scaled({c})*{self.provenance}")


def _check_vector(R, x):
    x = np.asarray(x)
    if x.shape != (R.dim,):
        raise ValueError(f"vector has shape {x.shape}, expected ({R.dim},)")
    return x


def eval_tensor(R: CurvatureTensor, X, Y, Z, W):
    """R(X, Y, Z, W): full contraction of the components."""
    X, Y, Z, W = (_check_vector(R, v) for v in (X, Y, Z, W))
    c = R.components
    if c.dtype == object:
        t = np.tensordot(c, X, axes=([0], [0]))
        t = np.tensordot(t, Y, axes=([0], [0]))
        t = np.tensordot(t, Z, axes=([0], [0]))
        return t.dot(W)
    return float(np.einsum("ijkl,i,j,k,l->", c, X, Y, Z, W))


def _jacobi_numerators(R: CurvatureTensor, x):
    """Exact Jacobi matrix at ``x`` as ``(numerators, denominator)``.

    ``numerators / denominator`` equals the Jacobi matrix exactly; the
    numerator array is int64 when an a-priori bound rules out overflow,
    otherwise an object array of Python ints.
    """
    nums_R, LR, R64, Rmax = R._exact_form
    xn, Lx = clear_denominators(np.asarray(x, dtype=object))
    n = R.dim
    m = None
    if R64 is not None:
        try:
            x64 = np.asarray(xn.tolist(), dtype=np.int64)
        except OverflowError:
            x64 = None
        if x64 is not None:
            xmax = float(np.abs(x64).max())
            if 1.1 * Rmax * n * n * xmax * xmax < _INT64_SAFE:
                m = np.einsum("ijkw,j,k->wi", R64, x64, x64)
    if m is None:
        t = np.tensordot(nums_R, xn, axes=([1], [0]))  # (i, k, w)
        t = np.tensordot(t, xn, axes=([1], [0]))       # (i, w)
        m = t.T
    return m, LR * Lx * Lx


def _jacobi_matrix_exact(R: CurvatureTensor, x):
    """Exact Jacobi matrix in rational mode (object array of exact scalars)."""
    m, denom = _jacobi_numerators(R, x)
    m_obj = m if m.dtype == object else _object_array(m.tolist())
    if denom != 1:
        m_obj = m_obj * Fraction(1, denom)
    return m_obj


def jacobi_matrix(R: CurvatureTensor, x):
    """Matrix of the Jacobi operator J_x: M[w, i] = R(e_i, x, x, e_w)."""
    x = _check_vector(R, x)
    if R.mode == RATIONAL:
        return _jacobi_matrix_exact(R, x)
    return np.einsum("ijkw,j,k->wi", R.components, x, x)


@dataclass(frozen=True)
class JacobiOperator:
    """Self-adjoint operator Y -> R#(Y, X)X; annihilates its base vector."""

    base: np.ndarray
    matrix: np.ndarray

    def __call__(self, y):
        return self.matrix.dot(y)


def jacobi(R: CurvatureTensor, x) -> JacobiOperator:
    return JacobiOperator(np.asarray(x), jacobi_matrix(R, x))


def _complement_frame(x):
    """Deterministic orthonormal basis of x-perp (float), columns of shape (n, n-1)."""
    x = np.asarray(x, dtype=np.float64)
    n = x.shape[0]
    m = np.empty((n, n + 1))
    m[:, 0] = x
    m[:, 1:] = np.eye(n)
    q, _ = np.linalg.qr(m)
    return q[:, 1:]


@dataclass(frozen=True)
class ReducedJacobi:
    """Jacobi operator restricted to base-perp, in an orthonormal frame."""

    base: np.ndarray
    frame: np.ndarray   # (n, n-1), orthonormal columns spanning base-perp
    matrix: np.ndarray  # (n-1, n-1)


def reduced_jacobi(R: CurvatureTensor, x, unit_tol=UNIT_TOL) -> ReducedJacobi:
    x = np.asarray(x, dtype=np.float64)
    if abs(np.linalg.norm(x) - 1.0) > unit_tol:
        raise PreconditionError("reduced_jacobi requires a unit base vector")
    frame = _complement_frame(x)
    full = jacobi_matrix(R.to_float() if R.mode == RATIONAL else R, x)
    red = frame.T @ full @ frame
    return ReducedJacobi(x, frame, 0.5 * (red + red.T))


def ricci_operator(R: CurvatureTensor):
    """Ricci operator: Ric[w, y] = sum_i R(e_y, e_i, e_i, e_w)."""
    t = np.trace(R.components, axis1=1, axis2=2)  # t[y, w]
    return t.T


def validate_symmetries(R: CurvatureTensor, tol=None):
    """Check the Z2 symmetries and the first Bianchi identity of R."""
    if tol is None:
        tol = 0 if R.mode == RATIONAL else IDENTITY_TOL
    c = R.components
    res = {
        "skew_first_pair": c + c.transpose(1, 0, 2, 3),
        "skew_last_pair": c + c.transpose(0, 1, 3, 2),
        "pair_interchange": c - c.transpose(2, 3, 0, 1),
        "first_bianchi": c + c.transpose(1, 2, 0, 3) + c.transpose(2, 0, 1, 3),
    }
    per_family = {k: np.abs(v).max() for k, v in res.items()}
    worst = max(per_family.values())
    witness = {"residual_by_family": per_family}
    return make_report("symmetries", worst, witness, samples=R.dim**4, seed=0,
                       tol=tol, mode=R.mode, provenance=R.provenance)


# ---------------------------------------------------------------------------
# Constructors.
# ---------------------------------------------------------------------------

def _r1_int(n):
    eye = np.eye(n, dtype=np.int64)
    return (np.einsum("il,jk->ijkl", eye, eye)
            - np.einsum("ik,jl->ijkl", eye, eye))


def make_constant_curvature(n, kappa, mode=FLOAT64) -> CurvatureTensor:
    """Constant sectional curvature kappa: J_X Y = kappa (eps_X Y - g(Y,X) X)."""
    if n < 2:
        raise ValueError("dimension must be >= 2")
    base = _r1_int(n)
    if mode == RATIONAL:
        k = Fraction(kappa)
        comp = _int_components_to_mode(base * k.numerator, k.denominator, mode)
    else:
        comp = np.asarray(base, dtype=np.float64) * float(kappa)
    return CurvatureTensor(n, mode, comp, f"constant(n={n}, kappa={kappa})")


def _require_skew(J, tol=IDENTITY_TOL):
    J = np.asarray(J)
    if J.dtype == object or np.issubdtype(J.dtype, np.integer):
        if np.any(J != -J.T):
            raise ValueError("J is not skew-adjoint (exact check)")
    elif float(np.abs(J + J.T).max()) > tol * max(1.0, float(np.abs(J).max())):
        raise ValueError("J is not skew-adjoint beyond tolerance")
    return J


def _rj_components(J):
    """R^J[i,j,k,l] = J[k,i]J[l,j] - J[k,j]J[l,i] + 2 J[j,i]J[l,k]."""
    Jt = J.T
    return (np.einsum("ik,jl->ijkl", Jt, Jt)
            - np.einsum("jk,il->ijkl", Jt, Jt)
            + 2 * np.einsum("ij,kl->ijkl", Jt, Jt))


def make_rj(J, mode=FLOAT64) -> CurvatureTensor:
    """Tensor generated by a skew-adjoint endomorphism J."""
    J = _require_skew(J)
    n = J.shape[0]
    if mode == RATIONAL:
        if np.issubdtype(np.asarray(J).dtype, np.number) and J.dtype != object:
            Ji = np.asarray(J, dtype=np.int64)
            if not np.array_equal(np.asarray(J, dtype=np.float64),
                                  Ji.astype(np.float64)):
                raise ValueError("rational mode needs exact (integer/Fraction) J")
            comp = _int_components_to_mode(_rj_components(Ji), 1, mode)
        else:
            comp = _rj_components(np.asarray(J, dtype=object))
    else:
        comp = _rj_components(np.asarray(J, dtype=np.float64))
    return CurvatureTensor(n, mode, comp, f"rj(n={n})")


def make_clifford(n, mu0, terms, mode=RATIONAL, validate=True) -> CurvatureTensor:
    """Clifford combination mu0 R1 + sum_i mu_i R^{J_i}.

    ``terms`` is a list of (mu_i, J_i) pairs; the J_i must form a valid
    Clifford family (checked unless ``validate=False``).
    """
    if n < 2:
        raise ValueError("dimension must be >= 2")
    mus = [mu for mu, _ in terms]
    Js = [np.asarray(J) for _, J in terms]
    if validate and Js:
        rep = validate_hurwitz(CliffordFamily(n, tuple(Js)))
        if not rep.passed:
            raise PreconditionError(
                f"not a valid Clifford family: worst residual {rep.worst_residual}")
    prov = _clifford_provenance(n, mu0, mus, Js)
    integer_js = all(
        J.dtype != object and np.issubdtype(J.dtype, np.integer) for J in Js)
    if mode == RATIONAL and integer_js:
        fmus = [Fraction(mu0)] + [Fraction(m) for m in mus]
        L = math.lcm(*[f.denominator for f in fmus]) if fmus else 1
        acc = int(fmus[0] * L) * _r1_int(n)
        for f, J in zip(fmus[1:], Js):
            acc = acc + int(f * L) * _rj_components(np.asarray(J, dtype=np.int64))
        comp = _int_components_to_mode(acc, L, mode)
        R = CurvatureTensor(n, mode, comp, prov)
        # the integer form is already known: seed the cache used by the
        # exact Jacobi contraction instead of re-scanning 65k+ Fractions
        R.__dict__["_exact_form"] = (_object_array(acc.tolist()), L, acc,
                                     float(np.abs(acc).max()))
        return R
    acc = make_constant_curvature(n, mu0, mode).components.copy()
    for mu, J in zip(mus, Js):
        rj = make_rj(J, mode).components
        if mode == RATIONAL:
            acc = acc + rj * Fraction(mu)
        else:
            acc = acc + rj * float(mu)
    return CurvatureTensor(n, mode, acc, prov)


def _clifford_provenance(n, mu0, mus, Js):
    fam = [np.asarray(J).tolist() for J in Js]
    def fmt(x):
        return str(Fraction(x)) if isinstance(x, (int, Fraction)) else repr(x)
    return (f"clifford(n={n}; mu0={fmt(mu0)}; mu=[{', '.join(fmt(m) for m in mus)}]; "
            f"family={json.dumps(fam)})")


def make_from_symmetric(S_list, coeffs, mode=FLOAT64, n=None) -> CurvatureTensor:
    """Spanning generator: sum_t c_t (g(SX,W)g(SY,Z) - g(SX,Z)g(SY,W))."""
    if len(S_list) != len(coeffs):
        raise ValueError("one coefficient per matrix required")
    if not S_list:
        if n is None:
            raise ValueError("empty generator list needs an explicit dimension")
        if mode == RATIONAL:
            comp = _int_components_to_mode(np.zeros((n,) * 4, dtype=np.int64), 1, mode)
        else:
            comp = np.zeros((n,) * 4, dtype=np.float64)
        return CurvatureTensor(n, mode, comp, "from_symmetric(empty)")
    acc = None
    for S, c in zip(S_list, coeffs):
        S = np.asarray(S)
        require_symmetric(S)
        if mode == RATIONAL and S.dtype != object:
            S = np.array([[Fraction(v) for v in row] for row in S.tolist()],
                         dtype=object)
        elif mode == FLOAT64:
            S = np.asarray(S, dtype=np.float64)
        # R^S[i,j,k,l] = S[l,i] S[k,j] - S[k,i] S[l,j]
        term = (np.einsum("li,kj->ijkl", S, S) - np.einsum("ki,lj->ijkl", S, S))
        cc = Fraction(c) if mode == RATIONAL else float(c)
        acc = term * cc if acc is None else acc + term * cc
    nn = acc.shape[0]
    return CurvatureTensor(nn, mode, acc,
                           f"from_symmetric(n={nn}, terms={len(S_list)})")


def random_curvature(n, k_terms, stream) -> CurvatureTensor:
    """Seeded random tensor from random symmetric generators (float mode).

    Valid by construction; generically non-Osserman (negative control).
    """
    if n < 2 or k_terms < 1:
        raise ValueError("need n >= 2 and k_terms >= 1")
    Ss, cs = [], []
    for _ in range(k_terms):
        a = stream.standard_normal((n, n))
        Ss.append(0.5 * (a + a.T))
        cs.append(float(stream.standard_normal()))
    R = make_from_symmetric(Ss, cs, mode=FLOAT64)
    return CurvatureTensor(n, FLOAT64, R.components.copy(),
                           f"random(n={n}, k_terms={k_terms})")
