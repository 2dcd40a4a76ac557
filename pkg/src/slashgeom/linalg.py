"""Exact dense linear algebra on numpy object arrays.

Entries are Fractions, or GaussianRationals once something has been
complexified.  Elimination needs a field, so Lorentz and quaternion matrices
only go through the form-level helpers (signatures reduce them first).
"""

from dataclasses import dataclass
from fractions import Fraction
import math

import numpy as np

from .errors import DegenerateForm, DimensionMismatch, ShapeMismatch
from .scalars import (
    GaussianRational,
    LorentzRational,
    RationalQuaternion,
    algebra_of,
    as_rational,
    conjugate,
    normalize_algebra,
)

ONE = Fraction(1)
ZERO = Fraction(0)
_ALG_RANK = {"R": 0, "C": 1, "L": 1, "H": 2}


def _scalar(x):
    if isinstance(x, (GaussianRational, LorentzRational, RationalQuaternion)):
        return x
    if isinstance(x, (float, np.floating)):
        raise TypeError(f"float entry {x!r} in an exact matrix")
    return as_rational(x)


def mat(data):
    """Object array of exact scalars from nested lists (ints and "p/q" ok)."""
    a = np.array(data, dtype=object)
    if a.ndim == 1:
        a = a.reshape(1, -1) if a.size else a.reshape(0, 0)
    if a.ndim != 2:
        raise ShapeMismatch(f"expected a 2-d matrix, got {a.ndim} dimensions")
    out = np.empty(a.shape, dtype=object)
    for idx, x in np.ndenumerate(a):
        out[idx] = _scalar(x)
    return out


def vec(data):
    a = np.array(data, dtype=object).reshape(-1)
    out = np.empty(a.shape, dtype=object)
    for k, x in enumerate(a):
        out[k] = _scalar(x)
    return out


def zeros(r, c=None):
    c = r if c is None else c
    out = np.empty((r, c), dtype=object)
    out.fill(ZERO)
    return out


def eye(n):
    out = zeros(n)
    for k in range(n):
        out[k, k] = ONE
    return out


def block(rows):
    return np.block([[np.asarray(b, dtype=object) for b in row] for row in rows])


def matrix_algebra(M):
    tag = "R"
    for x in np.asarray(M).flat:
        t = algebra_of(x)
        if _ALG_RANK[t] > _ALG_RANK[tag]:
            if {t, tag} == {"C", "L"}:
                raise TypeError("matrix mixes complex and Lorentz entries")
            tag = t
    return tag


def promote(M, algebra):
    """Lift every entry into ``algebra`` (R -> C, R -> L, R/C -> H)."""
    algebra = normalize_algebra(algebra)
    cls = {"C": GaussianRational, "L": LorentzRational, "H": RationalQuaternion}.get(algebra)
    M = np.asarray(M, dtype=object)
    out = np.empty(M.shape, dtype=object)
    for idx, x in np.ndenumerate(M):
        out[idx] = _scalar(x) if cls is None else cls._coerce(x)
        if out[idx] is None:
            raise TypeError(f"cannot promote {x!r} to {algebra}")
    return out


def conj(M):
    M = np.asarray(M, dtype=object)
    out = np.empty(M.shape, dtype=object)
    for idx, x in np.ndenumerate(M):
        out[idx] = conjugate(x)
    return out


def conj_t(M):
    return conj(M).T


def is_zero(M):
    return all(x == 0 for x in np.asarray(M).flat)


def equal(A, B):
    A, B = np.asarray(A), np.asarray(B)
    return A.shape == B.shape and is_zero(A - B)


def to_float(M):
    """Float (or complex) mirror of a Q / Q(i) matrix."""
    M = np.asarray(M, dtype=object)
    if matrix_algebra(M) == "C":
        return np.array([[complex(x) for x in row] for row in M], dtype=complex).reshape(M.shape)
    return np.array([[float(x) for x in row] for row in M], dtype=float).reshape(M.shape)


def _scaled(M):
    """(integer matrix, common denominator) for a rational matrix, else None."""
    dens = []
    for x in M.flat:
        if isinstance(x, Fraction):
            dens.append(x.denominator)
        elif not isinstance(x, int):
            return None
    L = math.lcm(*dens) if dens else 1
    out = np.empty(M.shape, dtype=object)
    for idx, x in np.ndenumerate(M):
        out[idx] = int(x * L)
    return out, L


def _int_product(IA, IB):
    big = max((abs(x) for x in IA.flat), default=0) * max((abs(x) for x in IB.flat), default=0)
    if big * max(IA.shape[1], 1) < 2 ** 62:
        return IA.astype(np.int64) @ IB.astype(np.int64)
    return IA @ IB


def _split_gaussian(M):
    re = np.empty(M.shape, dtype=object)
    im = np.empty(M.shape, dtype=object)
    for idx, x in np.ndenumerate(M):
        if isinstance(x, GaussianRational):
            re[idx], im[idx] = x.re, x.im
        elif isinstance(x, (int, Fraction)):
            re[idx], im[idx] = x, 0
        else:
            return None
    return re, im


def mm(A, B):
    """Exact matrix product; rational inputs go through an integer kernel."""
    A = np.asarray(A, dtype=object)
    B = np.asarray(B, dtype=object)
    if A.ndim != 2 or B.ndim != 2 or A.size == 0 or B.size == 0:
        return A @ B
    sa, sb = _scaled(A), _scaled(B)
    if sa is not None and sb is not None:
        (IA, da), (IB, db) = sa, sb
        P = _int_product(IA, IB)
        d = da * db
        out = np.empty(P.shape, dtype=object)
        for idx, x in np.ndenumerate(P):
            out[idx] = Fraction(int(x), d)
        return out
    ga, gb = _split_gaussian(A), _split_gaussian(B)
    if ga is not None and gb is not None:
        (ar, ai), (br, bi) = ga, gb
        re = mm(ar, br) - mm(ai, bi)
        im = mm(ar, bi) + mm(ai, br)
        out = np.empty(re.shape, dtype=object)
        for idx, x in np.ndenumerate(re):
            out[idx] = GaussianRational(x, im[idx])
        return out
    return A @ B


def rref(M):
    """Reduced row echelon form over Q or Q(i).  Returns (R, pivot_columns)."""
    R = np.array(M, dtype=object, copy=True)
    rows, cols = R.shape
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if R[i, c] != 0), None)
        if p is None:
            continue
        if p != r:
            R[[r, p]] = R[[p, r]]
        piv = R[r, c]
        R[r] = np.array([x / piv for x in R[r]], dtype=object)
        for i in range(rows):
            if i != r and R[i, c] != 0:
                f = R[i, c]
                R[i] = R[i] - f * R[r]
        pivots.append(c)
        r += 1
    return R, pivots


def rank(M):
    M = np.asarray(M, dtype=object)
    if M.size == 0:
        return 0
    return len(rref(M)[1])


def kernel_basis(M):
    """Exact basis of the right kernel, as a list of 1-d object arrays."""
    M = np.asarray(M, dtype=object)
    rows, cols = M.shape
    if rows == 0:
        R, pivots = M, []
    else:
        R, pivots = rref(M)
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for f in free:
        v = np.empty(cols, dtype=object)
        v.fill(ZERO)
        v[f] = ONE
        for i, p in enumerate(pivots):
            v[p] = -R[i, f]
        basis.append(v)
    return basis


def columns(vectors, n=None):
    """Stack vectors as the columns of a matrix."""
    if not vectors:
        return zeros(n or 0, 0)
    return np.column_stack(vectors).astype(object)


def inverse(M):
    M = np.asarray(M, dtype=object)
    n, m = M.shape
    if n != m:
        raise DimensionMismatch(f"cannot invert a {n}x{m} matrix")
    R, pivots = rref(np.hstack([M, eye(n)]))
    if pivots[:n] != list(range(n)):
        raise DegenerateForm("matrix is singular")
    return R[:, n:]


def solve(M, b):
    """One exact solution x of M x = b (b a vector or matrix), or None."""
    M = np.asarray(M, dtype=object)
    b = np.asarray(b, dtype=object)
    vector = b.ndim == 1
    B = b.reshape(-1, 1) if vector else b
    rows, cols = M.shape
    R, pivots = rref(np.hstack([M, B]))
    if any(p >= cols for p in pivots):
        return None
    X = zeros(cols, B.shape[1])
    for i, p in enumerate(pivots):
        X[p] = R[i, cols:]
    return X[:, 0] if vector else X


def in_span(vectors, v):
    if not vectors:
        return is_zero(v)
    A = columns(vectors)
    return rank(A) == rank(np.column_stack([A, v]))


def eigenspace(S, mu):
    """Basis of ker(S - mu) for mu in {1, -1, i, -i, eps, -eps}.

    Real S is complexified for +-i.  For +-eps (real S only) the kernel is a
    module over L; it is returned through the idempotents e = (1 - eps)/2,
    ebar = (1 + eps)/2 as generators x e, y ebar with S x = -+x, S y = +-y,
    since eps e = -e and eps ebar = ebar.
    """
    S = np.asarray(S, dtype=object)
    mu = _scalar(mu)
    if algebra_of(mu) == "L":
        if mu.a != 0 or mu.b not in (1, -1):
            raise ValueError(f"eigenvalue {mu} is not +-eps")
        if matrix_algebra(S) != "R":
            raise ValueError("eps-eigenspaces are computed for real matrices only")
        e, ebar = LorentzRational(ONE / 2, -ONE / 2), LorentzRational(ONE / 2, ONE / 2)
        s = mu.b
        lift = lambda v, idem: np.array([x * idem for x in v], dtype=object)
        return ([lift(v, e) for v in eigenspace(S, -s)]
                + [lift(v, ebar) for v in eigenspace(S, s)])
    if algebra_of(mu) == "C" and mu.im != 0:
        S = promote(S, "C")
    elif algebra_of(mu) == "C":
        mu = mu.re
    n = S.shape[0]
    out = []
    for v in kernel_basis(S - mu * eye(n)):
        lead = next(x for x in v if x != 0)
        out.append(v * (1 / lead) if lead != 1 else v)
    return out


# ---------------------------------------------------------------- forms

KINDS = ("symmetric", "skew", "hermitian", "antihermitian")
_KIND_ALIASES = {
    "symmetric-bilinear": "symmetric", "symmetric": "symmetric",
    "skew-bilinear": "skew", "skew": "skew", "skew-symmetric": "skew",
    "Hermitian": "hermitian", "hermitian": "hermitian",
    "anti-Hermitian": "antihermitian", "antihermitian": "antihermitian",
    "anti-hermitian": "antihermitian",
}


@dataclass(frozen=True)
class FormSpec:
    gram: np.ndarray
    algebra: str = "R"
    kind: str = "symmetric"

    def __post_init__(self):
        object.__setattr__(self, "algebra", normalize_algebra(self.algebra))
        kind = _KIND_ALIASES.get(self.kind)
        if kind is None:
            raise ValueError(f"unknown form kind {self.kind!r}")
        object.__setattr__(self, "kind", kind)
        g = np.asarray(self.gram, dtype=object)
        if g.ndim != 2 or g.shape[0] != g.shape[1]:
            raise ShapeMismatch("Gram matrix must be square")
        g = promote(g, self.algebra)
        object.__setattr__(self, "gram", g)
        if not self.satisfies_kind():
            raise ValueError(f"Gram matrix is not {self.kind} over {self.algebra}")

    def satisfies_kind(self):
        g = self.gram
        if self.kind == "symmetric":
            return equal(g, g.T)
        if self.kind == "skew":
            return equal(g, -g.T)
        if self.kind == "hermitian":
            return equal(g, conj_t(g))
        return equal(g, -conj_t(g))

    @property
    def dim(self):
        return self.gram.shape[0]


def _as_form(F, hermitian=None):
    if isinstance(F, FormSpec):
        return F
    g = np.asarray(F, dtype=object)
    alg = matrix_algebra(g)
    kind = "symmetric" if alg == "R" and not hermitian else "hermitian"
    return FormSpec(g, alg, kind)


def quaternionic_to_complex(G):
    """C-part Gram of an H-sesquilinear form on the right C-basis {e_a, e_a j}.

    H^n is a right C-space; with h(xz, yw) = conj(z) h(x, y) w the C-part of h
    is an honest C-sesquilinear form on C^{2n}.
    """
    G = promote(G, "H")
    n = G.shape[0]
    jq = RationalQuaternion(0, 0, 1, 0)
    out = np.empty((2 * n, 2 * n), dtype=object)
    for a in range(n):
        for b in range(n):
            g = G[a, b]
            vals = {
                (0, 0): g,
                (0, 1): g * jq,
                (1, 0): jq.conjugate() * g,
                (1, 1): jq.conjugate() * g * jq,
            }
            for (s, t), q in vals.items():
                out[a + s * n, b + t * n] = q.complex_pair()[0]
    return out


def congruence_signature(F):
    """Inertia (p, q, z) of a symmetric or Hermitian form.

    Symmetric elimination with 1x1 pivots; when the remaining diagonal is all
    zero a 2x2 hyperbolic block [[0, a], [conj a, 0]] is split off, adding one
    positive and one negative direction.  No square roots are taken.
    """
    F = _as_form(F)
    if F.kind not in ("symmetric", "hermitian"):
        raise ValueError("signature needs a symmetric or Hermitian form")
    M = F.gram
    if F.algebra == "H":
        p, q, z = congruence_signature(FormSpec(quaternionic_to_complex(M), "C", "hermitian"))
        return p // 2, q // 2, z // 2
    if F.algebra == "L":
        raise ValueError("signature over L is not a real inertia; split it first")
    M = np.array(M, dtype=object, copy=True)
    p = q = 0
    while M.shape[0]:
        n = M.shape[0]
        d = next((i for i in range(n) if M[i, i] != 0), None)
        if d is not None:
            piv = M[d, d]
            val = piv.re if isinstance(piv, GaussianRational) else piv
            if val > 0:
                p += 1
            else:
                q += 1
            col = M[:, d].copy()
            row = M[d, :].copy()
            M = M - np.outer(col, row) / piv
            keep = [i for i in range(n) if i != d]
            M = M[np.ix_(keep, keep)]
            continue
        hit = next(((i, j) for i in range(n) for j in range(i + 1, n) if M[i, j] != 0), None)
        if hit is None:
            break
        i, j = hit
        E = M[np.ix_([i, j], [i, j])]
        keep = [k for k in range(n) if k not in (i, j)]
        C = M[np.ix_(keep, [i, j])]
        Ct = M[np.ix_([i, j], keep)]
        M = M[np.ix_(keep, keep)] - C @ inverse(E) @ Ct
        p += 1
        q += 1
    return p, q, M.shape[0]


def congruence_diagonalize(F):
    """P and d with P^H G P = diag(d) (P^T G P for real symmetric G).

    Hyperbolic pairs are broken with e_i + conj(a) e_j, which keeps the
    computation rational.
    """
    F = _as_form(F)
    G = F.gram
    n = G.shape[0]
    P = eye(n) if F.algebra == "R" else promote(eye(n), F.algebra)
    ct = (lambda X: X.T) if F.algebra == "R" else conj_t
    cols = [P[:, k] for k in range(n)]
    done, diag = [], []
    while cols:
        # current form on the remaining columns
        A = columns(cols)
        M = ct(A) @ G @ A
        m = len(cols)
        d = next((i for i in range(m) if M[i, i] != 0), None)
        if d is None:
            hit = next(((i, j) for i in range(m) for j in range(i + 1, m) if M[i, j] != 0), None)
            if hit is None:
                done.extend(cols)
                diag.extend([ZERO] * m)
                break
            i, j = hit
            cols[i] = cols[i] + cols[j] * conjugate(M[i, j])
            continue
        v = cols.pop(d)
        piv = M[d, d]
        rest = []
        idx = [k for k in range(m) if k != d]
        for k, w in zip(idx, cols):
            # w - v * (v^H G w) / (v^H G v)
            rest.append(w - v * (M[d, k] / piv))
        cols = rest
        done.append(v)
        diag.append(piv)
    return columns(done, n), diag


def darboux_basis(F, constant=1, layout="pairs"):
    """Rational symplectic basis: P^T G P is the standard form times ``constant``.

    layout "pairs" gives diag([[0, c], [-c, 0]], ...); layout "blocks" gives
    [[0, c I], [-c I, 0]] (basis x_1..x_m, y_1..y_m).
    """
    if isinstance(F, FormSpec):
        G = F.gram
    else:
        G = np.asarray(F, dtype=object)
    if not equal(G, -G.T):
        raise ValueError("Gram matrix is not skew-symmetric")
    n = G.shape[0]
    if n % 2 or rank(G) < n:
        raise DegenerateForm("skew form is degenerate")
    c = as_rational(constant)
    om = lambda u, v: u @ G @ v
    remaining = [eye(n)[:, k] for k in range(n)]
    xs, ys = [], []
    while remaining:
        x = remaining.pop(0)
        k = next((i for i, v in enumerate(remaining) if om(x, v) != 0), None)
        if k is None:
            raise DegenerateForm("skew form is degenerate")
        y = remaining.pop(k)
        y = y * (c / om(x, y))
        nxt = []
        for v in remaining:
            # v + alpha x + beta y is orthogonal to x and y
            beta = om(v, x) / c
            alpha = -om(v, y) / c
            nxt.append(v + alpha * x + beta * y)
        remaining = nxt
        xs.append(x)
        ys.append(y)
    if layout == "pairs":
        cols = [v for pair in zip(xs, ys) for v in pair]
    elif layout == "blocks":
        cols = xs + ys
    else:
        raise ValueError(f"unknown layout {layout!r}")
    return columns(cols)


def standard_symplectic(m, constant=1, layout="pairs"):
    c = as_rational(constant)
    if layout == "blocks":
        return block([[zeros(m), c * eye(m)], [-c * eye(m), zeros(m)]])
    out = zeros(2 * m)
    for k in range(m):
        out[2 * k, 2 * k + 1] = c
        out[2 * k + 1, 2 * k] = -c
    return out
