"""Left-invariant Courant geometry on a Lie algebra given by structure constants.

For left-invariant sections u + sigma, v + tau the functions tau(u), sigma(v)
are constant, so the exact term of the Courant bracket drops out and the Lie
derivatives reduce to coadjoint terms:

    [u + sigma, v + tau] = [u, v] + (w -> -tau([u, w]) + sigma([v, w])).

All verdicts are exact rank computations; nothing here takes a tolerance.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from .errors import DimensionMismatch, NotACirclePoint, NotASlashStructure
from .extended import BlockEndo, ExtendedVector, as_matrix, flat, unflat
from .linalg import (
    block, columns, equal, eye, in_span, inverse, is_zero, kernel_basis, mat, rank,
    solve, vec, zeros,
)
from .scalars import I, as_rational
from .slash import (
    check_slash_complex, check_slash_symplectic, lift_tensor,
)


class LieAlgebra:
    """Structure constants c[i, j, k] with [e_i, e_j] = sum_k c[i, j, k] e_k (0-based)."""

    def __init__(self, dim, c=None, name=None):
        self.dim = int(dim)
        if self.dim < 1:
            raise ValueError("dimension must be positive")
        n = self.dim
        if c is None:
            c = np.empty((n, n, n), dtype=object)
            c.fill(Fraction(0))
        c = np.asarray(c, dtype=object)
        if c.shape != (n, n, n):
            raise DimensionMismatch(f"structure constants must have shape {(n, n, n)}, got {c.shape}")
        self.c = np.empty_like(c)
        for idx, x in np.ndenumerate(c):
            self.c[idx] = as_rational(x)
        if not equal(self.c, -self.c.transpose(1, 0, 2)):
            raise ValueError("structure constants are not antisymmetric in (i, j)")
        self.name = name
        # ad[i] is the matrix of ad(e_i)
        self.ad = [self.c[i].T.copy() for i in range(n)]

    @classmethod
    def from_brackets(cls, dim, brackets, name=None):
        """``brackets`` maps (i, j) with i < j (0-based) to {k: coefficient}."""
        c = np.empty((dim, dim, dim), dtype=object)
        c.fill(Fraction(0))
        for (i, j), coeffs in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim) or i == j:
                raise ValueError(f"bad bracket index pair {(i, j)}")
            for k, v in coeffs.items():
                if not 0 <= k < dim:
                    raise ValueError(f"bad bracket target index {k}")
                c[i, j, k] = as_rational(v)
                c[j, i, k] = -as_rational(v)
        return cls(dim, c, name)

    @classmethod
    def abelian(cls, dim):
        return cls(dim, None, name=f"abelian R^{dim}")

    def brackets(self):
        """Nonzero brackets as {(i, j): {k: c}} for i < j."""
        out = {}
        for i, j in combinations(range(self.dim), 2):
            coeffs = {k: self.c[i, j, k] for k in range(self.dim) if self.c[i, j, k] != 0}
            if coeffs:
                out[(i, j)] = coeffs
        return out

    def ad_of(self, u):
        M = zeros(self.dim)
        for i, ui in enumerate(u):
            if ui != 0:
                M = M + ui * self.ad[i]
        return M

    def bracket(self, u, v):
        if len(u) != self.dim or len(v) != self.dim:
            raise DimensionMismatch("vector length does not match the algebra")
        return self.ad_of(u) @ np.asarray(v, dtype=object)

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, name={self.name!r})"


def heisenberg_times_r():
    """h_3 x R with basis e1..e4 and [e1, e2] = e3."""
    return LieAlgebra.from_brackets(4, {(0, 1): {2: 1}}, name="heisenberg x R")


def jacobi_check(g):
    n = g.dim
    basis = [eye(n)[:, k] for k in range(n)]
    for a, b, c in combinations(range(n), 3):
        x, y, z = basis[a], basis[b], basis[c]
        jac = (g.bracket(x, g.bracket(y, z)) + g.bracket(y, g.bracket(z, x))
               + g.bracket(z, g.bracket(x, y)))
        if not is_zero(jac):
            return False
    return True


def courant_bracket_li(s1, s2, g):
    if s1.n != g.dim or s2.n != g.dim:
        raise DimensionMismatch(f"sections of length {s1.n}, {s2.n} on a {g.dim}-dimensional algebra")
    u, sigma, v, tau = s1.vec, s1.covec, s2.vec, s2.covec
    out_vec = g.bracket(u, v)
    # covector component k is -tau([u, e_k]) + sigma([v, e_k])
    out_cov = -(g.ad_of(u).T @ tau) + g.ad_of(v).T @ sigma
    return ExtendedVector(out_vec, out_cov)


def _courant_full(x, y, g):
    n = g.dim
    u, sigma, v, tau = x[:n], x[n:], y[:n], y[n:]
    out_vec = g.ad_of(u) @ v
    out_cov = -(g.ad_of(u).T @ tau) + g.ad_of(v).T @ sigma
    return np.concatenate([out_vec, out_cov])


def d_two_form(theta, g):
    """d theta(e_a, e_b, e_c) for a < b < c as a dict."""
    theta = np.asarray(theta, dtype=object)
    n = g.dim
    E = eye(n)
    th = lambda x, y: x @ theta @ y
    out = {}
    for a, b, c in combinations(range(n), 3):
        x, y, z = E[:, a], E[:, b], E[:, c]
        out[(a, b, c)] = (-th(g.bracket(x, y), z) + th(g.bracket(x, z), y)
                          - th(g.bracket(y, z), x))
    return out


def d_closed_2form(theta, g):
    theta = np.asarray(theta, dtype=object)
    if theta.shape != (g.dim, g.dim):
        raise DimensionMismatch("form and algebra dimensions differ")
    return all(v == 0 for v in d_two_form(theta, g).values())


def is_symplectic_li(theta, g):
    theta = np.asarray(theta, dtype=object)
    return (equal(theta, -theta.T) and rank(theta) == theta.shape[0]
            and d_closed_2form(theta, g))


def is_subalgebra(vectors, g):
    for x, y in combinations(vectors, 2):
        if not in_span(vectors, g.bracket(x, y)):
            return False
    return True


def _eig(S, mu):
    from .linalg import eigenspace
    return eigenspace(as_matrix(S), mu)


def eigensection_involutive(S, mu, g):
    """Is the mu-eigenspace of S in (g + g*) (complexified for mu = +-i) Courant-closed?"""
    M = as_matrix(S)
    if M.shape[0] != 2 * g.dim:
        raise DimensionMismatch("S does not act on g + g*")
    basis = _eig(M, mu)
    for x, y in combinations(basis, 2):
        if not in_span(basis, _courant_full(x, y, g)):
            return False
    return True


def tensor_eigen_subalgebras(r, g, lam, plus_only=False):
    """Eigendistributions of r (+-1 for lam = 1, +-i for lam = -1) are subalgebras."""
    mus = (1, -1) if lam == 1 else (I, -I)
    if plus_only:
        mus = mus[:1]
    for mu in mus:
        basis = _eig(r, mu)
        if not is_subalgebra(basis, g):
            return False
    return True


@dataclass
class IntegrabilityVerdict:
    integrable: bool
    spaces: dict = field(default_factory=dict)

    def __bool__(self):
        return self.integrable


def is_integrable_slash(S, lam, plus_only, g, j=None, omega=None, ell=1):
    """Courant integrability of a slash structure given by left-invariant data.

    Pass ``j`` for the complex side or ``omega`` for the symplectic side; the
    algebraic conditions are checked first.
    """
    if (j is None) == (omega is None):
        raise ValueError("give exactly one of j or omega")
    if j is not None:
        rep = check_slash_complex(S, j, lam, ell)
    else:
        rep = check_slash_symplectic(S, omega, lam, ell)
    if not rep.ok:
        raise NotASlashStructure(f"algebraic conditions fail: {rep.failed_clause}", rep.failed_clause)
    if lam == -1:
        mus = [("+i", I), ("-i", -I)]
    else:
        mus = [("+1", 1)] if plus_only else [("+1", 1), ("-1", -1)]
    spaces = {name: eigensection_involutive(S, mu, g) for name, mu in mus}
    return IntegrabilityVerdict(all(spaces.values()), spaces)


# ------------------------------------------------------------ Heisenberg x R

def _i2():
    return mat([[0, -1], [1, 0]])


def _r2():
    return mat([[1, 0], [0, -1]])


@dataclass
class HeisenbergDemo:
    g: LieAlgebra
    j: np.ndarray
    R: np.ndarray
    D: np.ndarray
    S: BlockEndo
    T: np.ndarray
    d: np.ndarray

    def s_of(self, c2, s2):
        """S(t) for the rational circle point (c2, s2) = (cos 2t, sin 2t)."""
        c2, s2 = as_rational(c2), as_rational(s2)
        if c2 * c2 + s2 * s2 != 1:
            raise NotACirclePoint(f"({c2}, {s2}) is not on the unit circle")
        return BlockEndo(block([[c2 * self.R, -s2 * self.T], [s2 * self.T, -c2 * self.R]]))

    def exp_tD(self, c, s):
        """e^{tD} = cos t I_8 + sin t D for the circle point (c, s) = (cos t, sin t)."""
        c, s = as_rational(c), as_rational(s)
        if c * c + s * s != 1:
            raise NotACirclePoint(f"({c}, {s}) is not on the unit circle")
        return c * eye(8) + s * self.D


def heisenberg_demo():
    g = heisenberg_times_r()
    Z = zeros(2)
    j = block([[_i2(), Z], [Z, _i2()]])
    R = block([[_r2(), Z], [Z, _r2()]])
    d = block([[Z, -_r2()], [_r2(), Z]])
    D = block([[zeros(4), d], [d, zeros(4)]])
    T = block([[Z, -eye(2)], [eye(2), Z]])
    return HeisenbergDemo(g, j, R, D, lift_tensor(R), T, d)


def heisenberg_pattern(a, b, c, sign=1):
    """The 4x4 skew pattern giving left-invariant symplectic forms on h_3 x R."""
    a, b, c = as_rational(a), as_rational(b), as_rational(c)
    s = sign
    return mat([
        [0, c, a, s * b],
        [-c, 0, -b, s * a],
        [-a, b, 0, 0],
        [-s * b, -s * a, 0, 0],
    ])


def theta_e():
    """e^1^e^2 + e^3^e^4 as a Gram matrix."""
    w = zeros(4)
    w[0, 1], w[1, 0], w[2, 3], w[3, 2] = 1, -1, 1, -1
    return w


# -------------------------------------------------------- B-field obstruction

def _skew_unknowns(n):
    return [(a, b) for a in range(n) for b in range(a + 1, n)]


def _skew_from(params, n, pairs):
    X = zeros(n)
    for (a, b), p in zip(pairs, params):
        X[a, b] = p
        X[b, a] = -p
    return X


def _linear_map_matrix(fn, n, pairs):
    """Matrix of the linear map (skew params) -> fn(X).flatten()."""
    cols = []
    for k in range(len(pairs)):
        e = [0] * len(pairs)
        e[k] = 1
        cols.append(np.asarray(fn(_skew_from(e, n, pairs)), dtype=object).reshape(-1))
    return columns(cols)


@dataclass
class Decomposition:
    kind: str
    found: bool
    reason: str
    data: dict = field(default_factory=dict)


@dataclass
class ObstructionVerdict:
    obstructed: bool
    diagonal: Decomposition
    antidiagonal: Decomposition

    @property
    def label(self):
        return "Obstructed" if self.obstructed else "Unobstructed"


def _diagonal_decomposition(S, j, g, lam, ell):
    n = S.n
    if not is_zero(S.B):
        return Decomposition("diagonal", False,
                             "upper-right block of B R B^-1 is always 0, but S has a nonzero one")
    r = S.A
    if not equal(S.D, -r.T):
        return Decomposition("diagonal", False, "lower-right block is not -r^T")
    pairs = _skew_unknowns(n)
    # lower-left block of B R B^-1 is W r + r^T W with W = flat(b)
    rows = [_linear_map_matrix(lambda W: W @ r + r.T @ W, n, pairs)]
    rhs = [S.C.reshape(-1)]
    extra = []
    if j is not None:
        rows.append(_linear_map_matrix(lambda W: W @ j - ell * (j.T @ W), n, pairs))
        rhs.append(zeros(n * n, 1)[:, 0])
        extra.append("B commutes with J_ell")
    if g is not None:
        rows.append(_closedness_matrix(g, pairs))
        rhs.append(zeros(len(list(combinations(range(n), 3))), 1)[:, 0])
        extra.append("b closed")
    sol = solve(np.vstack(rows), np.concatenate(rhs)) if pairs else (
        [] if is_zero(S.C) else None)
    if sol is None:
        return Decomposition("diagonal", False,
                             "no skew b solves W r + r^T W = C" + (" with " + ", ".join(extra) if extra else ""))
    W = _skew_from(list(sol), n, pairs)
    data = {"r": r, "b": unflat(W)}
    R = lift_tensor(r)
    if j is not None and not check_slash_complex(R, j, lam, ell).ok:
        return Decomposition("diagonal", False, "diagonal part is not a slash structure", data)
    if g is not None and not tensor_eigen_subalgebras(r, g, lam):
        return Decomposition("diagonal", False, "r is not integrable", data)
    return Decomposition("diagonal", True, "S = B R B^-1", data)


def _closedness_matrix(g, pairs):
    n = g.dim

    def d_of(W):
        theta = unflat(W)
        return np.array(list(d_two_form(theta, g).values()), dtype=object)

    return _linear_map_matrix(d_of, n, pairs)


def _antidiagonal_decomposition(S, j, g, lam, ell):
    n = S.n
    # B Q B^-1 = (-lam a^-1 b, lam a^-1; a - lam b a^-1 b, lam b a^-1), a = flat(theta), b = flat(beta)
    if rank(S.B) < n:
        return Decomposition("antidiagonal", False, "upper-right block is singular, so a^-1 cannot match it")
    a = lam * inverse(S.B)
    b = -lam * (a @ S.A)
    data = {"a": unflat(a), "b": unflat(b)}
    if not equal(a, -a.T):
        return Decomposition("antidiagonal", False, "forced a is not skew", data)
    if not equal(b, -b.T):
        return Decomposition("antidiagonal", False, "forced b is not skew", data)
    ainv = inverse(a)
    if not equal(a - lam * (b @ ainv @ b), S.C) or not equal(lam * (b @ ainv), S.D):
        return Decomposition("antidiagonal", False, "lower blocks do not match", data)
    if j is not None:
        if not equal(b @ j, ell * (j.T @ b)):
            return Decomposition("antidiagonal", False, "B-field does not commute with J_ell", data)
        Q = BlockEndo.from_blocks(zeros(n), lam * ainv, a, zeros(n))
        if not check_slash_complex(Q, j, lam, ell).ok:
            return Decomposition("antidiagonal", False, "anti-diagonal part is not a slash structure", data)
    if g is not None:
        if not d_closed_2form(unflat(b), g):
            return Decomposition("antidiagonal", False, "B-field form is not closed", data)
        if not d_closed_2form(unflat(a), g):
            return Decomposition("antidiagonal", False, "two-form of Q is not closed", data)
    return Decomposition("antidiagonal", True, "S = B Q B^-1", data)


def nontrivial_obstruction(S, j=None, g=None, lam=None, ell=1):
    """Try to write S as a B-field transform of a diagonal or an anti-diagonal lift.

    Both decompositions are solved exactly.  With ``j`` the pieces must be
    slash structures and the B-field must commute with J_ell; with ``g`` the
    forms must be closed and r integrable.  Obstructed means neither exists.
    """
    S = S if isinstance(S, BlockEndo) else BlockEndo(S)
    if lam is None:
        lam = 1 if equal(S.matrix @ S.matrix, eye(2 * S.n)) else -1
    diag = _diagonal_decomposition(S, j, g, lam, ell)
    anti = _antidiagonal_decomposition(S, j, g, lam, ell)
    return ObstructionVerdict(not (diag.found or anti.found), diag, anti)


# ---------------------------------------------------- L-symplectic structures

@dataclass
class EllSymplecticVerdict:
    ok: bool
    clause: str = None
    details: dict = field(default_factory=dict)
    theta: np.ndarray = None


def ell_symplectic_check(theta, omega, g):
    theta = np.asarray(theta, dtype=object)
    omega = np.asarray(omega, dtype=object)
    n = g.dim
    if not is_symplectic_li(omega, g):
        return EllSymplecticVerdict(False, "precondition: omega symplectic")
    if not equal(theta, -theta.T):
        return EllSymplecticVerdict(False, "precondition: theta skew")
    if not d_closed_2form(theta, g):
        return EllSymplecticVerdict(False, "precondition: theta closed", {"d_theta": d_two_form(theta, g)})
    A = inverse(flat(omega)) @ flat(theta)
    checks = {}
    checks["A^2 = id"] = equal(A @ A, eye(n))
    plus = kernel_basis(A - eye(n))
    minus = kernel_basis(A + eye(n))
    checks["A split"] = checks["A^2 = id"] and len(plus) == len(minus)
    checks["A symmetric for omega"] = equal(A.T @ omega, omega @ A)
    checks["D+ subalgebra"] = is_subalgebra(plus, g)
    checks["D- subalgebra"] = is_subalgebra(minus, g)
    for name, basis in (("D+", plus), ("D-", minus)):
        P = columns(basis, n)
        checks[f"omega nondegenerate on {name}"] = rank(P.T @ omega @ P) == len(basis)
    for clause, good in checks.items():
        if not good:
            return EllSymplecticVerdict(False, clause, checks, theta)
    return EllSymplecticVerdict(True, None, checks, theta)


def ell_symplectic_from_foliations(plus_basis, minus_basis, omega, g):
    """Converse direction: A = +-1 on two complementary subalgebras, theta_flat = omega_flat A."""
    omega = np.asarray(omega, dtype=object)
    n = g.dim
    plus = [vec(v) for v in plus_basis]
    minus = [vec(v) for v in minus_basis]
    if len(plus) != len(minus) or len(plus) + len(minus) != n:
        return EllSymplecticVerdict(False, "precondition: equal dimensions")
    P = columns(plus + minus, n)
    if rank(P) < n:
        return EllSymplecticVerdict(False, "precondition: complementary")
    for name, basis in (("D+", plus), ("D-", minus)):
        if not is_subalgebra(basis, g):
            return EllSymplecticVerdict(False, f"precondition: {name} subalgebra")
        B = columns(basis, n)
        if rank(B.T @ omega @ B) < len(basis):
            return EllSymplecticVerdict(False, f"precondition: omega nondegenerate on {name}")
    h = len(plus)
    diag = zeros(n)
    for k in range(n):
        diag[k, k] = 1 if k < h else -1
    A = P @ diag @ inverse(P)
    theta = unflat(flat(omega) @ A)
    if not equal(theta, -theta.T):
        return EllSymplecticVerdict(False, "theta skew", {"A": A}, theta)
    out = ell_symplectic_check(theta, omega, g)
    out.theta = theta
    return out
