"""The extended space E = V + V* and the structures living on it.

Coordinates are juxtaposed: a vector of E is (u, sigma) with u in the basis
e_1..e_n and sigma in the dual basis e^1..e^n.  The matrix of the dual map j*
is then j^T, and for a bilinear form c with Gram matrix C (C[a, b] = c(e_a, e_b))
the map c_flat: V -> V*, u -> c(u, .) has matrix C^T.
"""

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateForm, DimensionMismatch, NotAComplexStructure, ShapeMismatch
from .linalg import (
    block, eye, equal, inverse, is_zero, mat, mm, promote, rank, vec, zeros,
)
from .scalars import EPS, I


@dataclass(frozen=True, eq=False)
class ExtendedVector:
    vec: np.ndarray
    covec: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "vec", vec(self.vec))
        object.__setattr__(self, "covec", vec(self.covec))
        if self.vec.shape != self.covec.shape:
            raise DimensionMismatch("vector and covector parts differ in length")

    @property
    def n(self):
        return self.vec.shape[0]

    @property
    def full(self):
        return np.concatenate([self.vec, self.covec])

    @classmethod
    def from_full(cls, x):
        x = np.asarray(x, dtype=object).reshape(-1)
        if x.shape[0] % 2:
            raise DimensionMismatch("odd length cannot split into V + V*")
        n = x.shape[0] // 2
        return cls(x[:n], x[n:])

    def __eq__(self, other):
        if not isinstance(other, ExtendedVector):
            return NotImplemented
        return self.n == other.n and equal(self.full, other.full)

    __hash__ = None

    def __add__(self, other):
        return ExtendedVector.from_full(self.full + other.full)

    def __sub__(self, other):
        return ExtendedVector.from_full(self.full - other.full)


class BlockEndo:
    """Endomorphism (u, sigma) -> (A u + B sigma, C u + D sigma) of E."""

    __slots__ = ("matrix",)

    def __init__(self, matrix):
        M = np.asarray(matrix, dtype=object)
        if M.ndim != 2 or M.shape[0] != M.shape[1] or M.shape[0] % 2:
            raise ShapeMismatch(f"block endomorphism needs an even square matrix, got {M.shape}")
        self.matrix = M

    @classmethod
    def from_blocks(cls, A, B, C, D):
        A, B, C, D = (mat(X) if not isinstance(X, np.ndarray) else X for X in (A, B, C, D))
        shapes = {X.shape for X in (A, B, C, D)}
        if len(shapes) != 1 or A.shape[0] != A.shape[1]:
            raise ShapeMismatch(f"inconsistent block shapes {sorted(shapes)}")
        return cls(block([[A, B], [C, D]]))

    @classmethod
    def identity(cls, n):
        return cls(eye(2 * n))

    @property
    def n(self):
        return self.matrix.shape[0] // 2

    @property
    def A(self):
        return self.matrix[: self.n, : self.n]

    @property
    def B(self):
        return self.matrix[: self.n, self.n:]

    @property
    def C(self):
        return self.matrix[self.n:, : self.n]

    @property
    def D(self):
        return self.matrix[self.n:, self.n:]

    def _other(self, other):
        if isinstance(other, BlockEndo):
            if other.n != self.n:
                raise DimensionMismatch(f"dimensions {self.n} and {other.n} differ")
            return other.matrix
        return None

    def __matmul__(self, other):
        if isinstance(other, ExtendedVector):
            return ExtendedVector.from_full(self.matrix @ other.full)
        o = self._other(other)
        if o is None:
            return NotImplemented
        return BlockEndo(self.matrix @ o)

    def __add__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return BlockEndo(self.matrix + o)

    def __sub__(self, other):
        o = self._other(other)
        if o is None:
            return NotImplemented
        return BlockEndo(self.matrix - o)

    def __neg__(self):
        return BlockEndo(-self.matrix)

    def __mul__(self, c):
        return BlockEndo(self.matrix * c)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, BlockEndo):
            return NotImplemented
        return other.n == self.n and equal(self.matrix, other.matrix)

    __hash__ = None

    def inverse(self):
        return BlockEndo(inverse(self.matrix))

    def is_diagonal(self):
        return is_zero(self.B) and is_zero(self.C)

    def is_antidiagonal(self):
        return is_zero(self.A) and is_zero(self.D)

    def __repr__(self):
        return f"BlockEndo(n={self.n})"


def as_matrix(S):
    return S.matrix if isinstance(S, BlockEndo) else np.asarray(S, dtype=object)


def pairing_gram(n):
    return block([[zeros(n), eye(n)], [eye(n), zeros(n)]])


def pairing_b(x, y):
    """b(u + sigma, v + tau) = tau(u) + sigma(v)."""
    if x.n != y.n:
        raise DimensionMismatch(f"dimensions {x.n} and {y.n} differ")
    return y.covec @ x.vec + x.covec @ y.vec


def b_adjoint(E):
    """E* with b(Ex, y) = b(x, E* y); (A, B; C, D)* = (D^T, B^T; C^T, A^T)."""
    E = E if isinstance(E, BlockEndo) else BlockEndo(E)
    return BlockEndo.from_blocks(E.D.T, E.B.T, E.C.T, E.A.T)


def is_b_skew(S):
    return b_adjoint(S) == -S


def flat(gram):
    """Matrix of c_flat: V -> V* for the bilinear form with Gram ``gram``."""
    return np.asarray(gram, dtype=object).T


def unflat(W):
    return np.asarray(W, dtype=object).T


def sharp(pi_gram):
    """Matrix of pi_sharp: V* -> V, defined by eta(pi_sharp xi) = pi(xi, eta)."""
    return np.asarray(pi_gram, dtype=object).T


def check_complex_structure(j):
    j = np.asarray(j, dtype=object)
    if j.ndim != 2 or j.shape[0] != j.shape[1]:
        raise NotAComplexStructure("j must be square")
    if not equal(j @ j, -eye(j.shape[0])):
        raise NotAComplexStructure("j does not square to -id")
    return j


def check_symplectic(omega):
    omega = np.asarray(omega, dtype=object)
    if omega.ndim != 2 or omega.shape[0] != omega.shape[1]:
        raise ShapeMismatch("omega must be square")
    if not equal(omega, -omega.T):
        raise DegenerateForm("omega is not skew-symmetric")
    if rank(omega) < omega.shape[0]:
        raise DegenerateForm("omega is degenerate")
    return omega


def _sign(ell):
    if ell not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {ell!r}")
    return int(ell)


def make_J(j, ell):
    """J_ell = diag(j, ell j^T)."""
    j = check_complex_structure(j)
    return BlockEndo.from_blocks(j, zeros(j.shape[0]), zeros(j.shape[0]), _sign(ell) * j.T)


def make_I(omega, k):
    """I_k with blocks (0, k flat(omega)^-1; flat(omega), 0); I_k^2 = k id."""
    omega = check_symplectic(omega)
    W = flat(omega)
    n = W.shape[0]
    return BlockEndo.from_blocks(zeros(n), _sign(k) * inverse(W), W, zeros(n))


def is_split(S):
    """Equal eigenspace dimensions for an involution; automatic for S^2 = -id."""
    M = as_matrix(S)
    n = M.shape[0]
    M2 = mm(M, M)
    if equal(M2, -eye(n)):
        return True
    if not equal(M2, eye(n)):
        return False
    return rank(M - eye(n)) == rank(M + eye(n))


# ------------------------------------------------------- sesquilinear forms

def b_ell_gram(j, ell):
    """Complex matrix of b_ell(x, y) = b(x, y) - i b(x, J_ell y) on real coordinates."""
    G = pairing_gram(np.asarray(j).shape[0])
    J = make_J(j, ell).matrix
    return promote(G, "C") - I * (G @ J)


def b_pm_gram(omega, k):
    """Matrix of b_k(x, y) = b(x, y) + k eps_k b(x, I_k y); eps_-1 = i, eps_1 = eps."""
    k = _sign(k)
    G = pairing_gram(np.asarray(omega).shape[0])
    Ik = make_I(omega, k).matrix
    unit = EPS if k == 1 else I
    alg = "L" if k == 1 else "C"
    return promote(G, alg) + (k * unit) * (G @ Ik)


def _form(x, y, gram):
    return x.full @ gram @ y.full


def sesqui_b_ell(x, y, j, ell):
    if x.n != y.n:
        raise DimensionMismatch(f"dimensions {x.n} and {y.n} differ")
    return _form(x, y, b_ell_gram(j, ell))


def sesqui_b_pm(x, y, omega, k):
    if x.n != y.n:
        raise DimensionMismatch(f"dimensions {x.n} and {y.n} differ")
    return _form(x, y, b_pm_gram(omega, k))


def standard_j(m):
    """diag(i, ..., i) with i = [[0, -1], [1, 0]] on R^{2m}."""
    j = zeros(2 * m)
    for a in range(m):
        j[2 * a + 1, 2 * a] = 1
        j[2 * a, 2 * a + 1] = -1
    return mat(j)


def standard_omega(m):
    """Gram diag(K, ..., K) with K = [[0, 1], [-1, 0]], i.e. e^1^e^2 + e^3^e^4 + ..."""
    w = zeros(2 * m)
    for a in range(m):
        w[2 * a, 2 * a + 1] = 1
        w[2 * a + 1, 2 * a] = -1
    return mat(w)
