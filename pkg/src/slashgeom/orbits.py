"""Orbit classification of constant slash structures.

Every (lam, ell) set is a homogeneous space G/H.  This module builds the
normal form of each orbit, classifies a given structure, computes orbit
dimensions two independent ways and constructs conjugators F in G with
T = F S F^-1.

Model coordinates.  On the complex side E is identified with C^{2m} through a
real frame Phi whose columns are the images of the real basis of C^{2m}
(first the real units, then the imaginary units), so that J_ell becomes
multiplication by i and b_ell becomes the standard form B_ell.  On the
symplectic side with k = -1 the same is done for I_- and B_-; with k = 1 the
model is L^{2m} written as x e + y ebar with x, y real, where eps acts as
diag(-1, 1) and B_+ has real part (x^T y' + y^T x') / 2.
"""

from dataclasses import dataclass, field
import random as _random

import numpy as np

from .errors import (
    InvalidLabel, NotInAnyOrbit, NotInOrbit, ToleranceExceeded, UnsupportedOrbit,
)
from .extended import (
    BlockEndo, as_matrix, check_complex_structure, check_symplectic, make_I, make_J,
    pairing_gram, standard_j, standard_omega,
)
from .linalg import (
    FormSpec, block, columns, congruence_diagonalize, congruence_signature, darboux_basis, equal, eye, in_span,
    inverse, kernel_basis, mm, rank, to_float, zeros,
)
from .scalars import Fraction, GaussianRational, I, RationalQuaternion
from .slash import (
    COMPLEX, SYMPLECTIC, beta_gram_complex, beta_gram_symplectic, check_slash_complex,
    check_slash_symplectic,
)

DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class OrbitLabel:
    side: str
    lam: int
    ell: int
    m: int
    n: object = None

    def __post_init__(self):
        if self.side not in (COMPLEX, SYMPLECTIC):
            raise InvalidLabel(f"side must be 'complex' or 'symplectic', got {self.side!r}")
        if self.lam not in (1, -1) or self.ell not in (1, -1):
            raise InvalidLabel("lambda and ell must be +1 or -1")
        if not isinstance(self.m, int) or self.m < 1:
            raise InvalidLabel(f"m must be a positive integer, got {self.m!r}")
        if self.has_signature:
            top = 2 * self.m if self.side == COMPLEX else self.m
            if self.n is None or not (0 <= self.n <= top):
                raise InvalidLabel(f"n must be an integer in [0, {top}] for {self.row}")
        elif self.n is not None:
            raise InvalidLabel(f"row {self.row} carries no signature")
        if self.side == COMPLEX and (self.lam, self.ell) == (-1, -1) and self.m % 2:
            raise InvalidLabel("complex (-1,-1) needs even m")

    @property
    def has_signature(self):
        return (self.side, self.lam, self.ell) in ((COMPLEX, 1, 1), (SYMPLECTIC, -1, 1))

    @property
    def row(self):
        s = lambda x: "+" if x == 1 else "-"
        tail = f";{self.n}" if self.n is not None else ""
        return f"{self.side} ({s(self.lam)},{s(self.ell)}{tail})"

    def to_dict(self):
        return {"side": self.side, "lambda": self.lam, "ell": self.ell, "m": self.m, "n": self.n}

    def __str__(self):
        return f"{self.row}, m={self.m}"


def all_labels(m):
    out = []
    for n in range(2 * m + 1):
        out.append(OrbitLabel(COMPLEX, 1, 1, m, n))
    out.append(OrbitLabel(COMPLEX, 1, -1, m))
    out.append(OrbitLabel(COMPLEX, -1, 1, m))
    if m % 2 == 0:
        out.append(OrbitLabel(COMPLEX, -1, -1, m))
    out.append(OrbitLabel(SYMPLECTIC, 1, 1, m))
    out.append(OrbitLabel(SYMPLECTIC, 1, -1, m))
    for n in range(m + 1):
        out.append(OrbitLabel(SYMPLECTIC, -1, 1, m, n))
    out.append(OrbitLabel(SYMPLECTIC, -1, -1, m))
    return out


# ------------------------------------------------------------ model data

def _complex_linear(P, Q=None):
    """Real matrix of the C-linear map P + iQ on (X, Y) coordinates."""
    Q = zeros(*P.shape) if Q is None else Q
    return block([[P, -Q], [Q, P]])


def _conj_real(N):
    return block([[eye(N), zeros(N)], [zeros(N), -eye(N)]])


def _diag_signs(pos, neg):
    d = zeros(pos + neg)
    for k in range(pos + neg):
        d[k, k] = 1 if k < pos else -1
    return d


def _swap(m):
    return block([[zeros(m), eye(m)], [eye(m), zeros(m)]])


def _rot(m):
    return block([[zeros(m), -eye(m)], [eye(m), zeros(m)]])


def model_complex_unit(m):
    """Matrix of the model complex structure (i on C^{2m}, or eps on L^{2m})."""
    return _complex_linear(zeros(2 * m), eye(2 * m))


def model_gram(side, ell, m):
    """Real part of the model form in model coordinates."""
    if side == COMPLEX and ell == 1:
        return block([[eye(2 * m), zeros(2 * m)], [zeros(2 * m), -eye(2 * m)]])
    if side == COMPLEX:
        D = _diag_signs(m, m)
        return block([[D, zeros(2 * m)], [zeros(2 * m), D]])
    if ell == -1:  # symplectic k = -1 is selected by the caller through k
        H = _swap(m)
        return block([[H, zeros(2 * m)], [zeros(2 * m), H]])
    return Fraction(1, 2) * _swap(2 * m)


def _model_matrix(label):
    m = label.m
    N = 2 * m
    lam, ell = label.lam, label.ell
    if label.side == COMPLEX:
        conj = _conj_real(N)
        if (lam, ell) == (1, -1):
            Lin = _swap(m)  # S(z, w) = (conj w, conj z)
        elif (lam, ell) == (-1, -1):
            k = m // 2
            Lin = block([[_rot(k), zeros(m)], [zeros(m), _rot(k)]])  # (-z2, z1, -w2, w1), conjugated
        elif (lam, ell) == (1, 1):
            E = _diag_signs(label.n, N - label.n)
            return _complex_linear(zeros(N), E) @ conj  # S(z, w) = (i conj z, -i conj w)
        else:
            Lin = _rot(m)  # S(z, w) = (-conj w, conj z)
        return _complex_linear(Lin) @ conj
    if lam * ell == -1:
        if lam == 1:
            return _complex_linear(_diag_signs(m, m))  # S(z, w) = (z, -w)
        q = _diag_signs(label.n, m - label.n)
        Q = block([[zeros(m), -q], [-q, zeros(m)]])  # Q(z1, z2, w1, w2) = (-w1, w2, -z1, z2)
        return _complex_linear(zeros(N), Q)  # S = i Q
    if lam == 1:
        r = _diag_signs(m, m)
        return block([[r, zeros(N)], [zeros(N), -r]])
    j = _rot(m)
    return block([[j, zeros(N)], [zeros(N), j]])


def _k_of(label):
    return label.lam * label.ell


def standard_frame(side, ell_or_k, m):
    """Phi with Phi^-1 J Phi (resp. I_k) the model unit and Phi^T b Phi the model Gram.

    Written for the standard j or omega (``standard_j`` / ``standard_omega``).
    """
    N = 2 * m
    half = Fraction(1, 2)

    def ext(vec_idx=None, cov_idx=None, cov_coef=1):
        x = np.empty(2 * N, dtype=object)
        x.fill(Fraction(0))
        if vec_idx is not None:
            x[vec_idx] = Fraction(1)
        if cov_idx is not None:
            x[N + cov_idx] = Fraction(cov_coef)
        return x

    if side == COMPLEX:
        J = make_J(standard_j(m), ell_or_k).matrix
        if ell_or_k == 1:
            F = [ext(a, a, half) for a in range(N)]
        else:
            F = [ext(2 * k, 2 * k, half) for k in range(m)] + \
                [ext(2 * k, 2 * k, -half) for k in range(m)]
        return columns(F + [J @ f for f in F])
    Ik = make_I(standard_omega(m), ell_or_k).matrix
    if ell_or_k == -1:
        F = [ext(2 * k) for k in range(m)] + [ext(None, 2 * k) for k in range(m)]
        return columns(F + [Ik @ f for f in F])
    F = [ext(a, a) for a in range(N)]
    one = eye(2 * N)
    e_proj = (one - Ik) * half
    ebar_proj = (one + Ik) * half
    return columns([half * (e_proj @ f) for f in F] + [ebar_proj @ f for f in F])


def structure_frame(structure, side):
    """Psi = diag(P, P^-T) carrying the standard j / omega to the given one."""
    structure = np.asarray(structure, dtype=object)
    N = structure.shape[0]
    if N % 2:
        raise InvalidLabel("odd-dimensional base")
    if side == COMPLEX:
        j = check_complex_structure(structure)
        vecs = []
        for v in eye(N).T:
            if not in_span(vecs, v):
                vecs += [v, j @ v]
        # j0 maps e_{2a} to e_{2a+1}, so P must map e_{2a} -> v and e_{2a+1} -> j v
        P = columns(vecs)
        if rank(P) < N:
            raise InvalidLabel("could not build a complex basis")
    else:
        omega = check_symplectic(structure)
        P = darboux_basis(omega, 1, "pairs")
    return block([[P, zeros(N)], [zeros(N), inverse(P).T]])


# ---------------------------------------------------------- normal forms

@dataclass
class NormalForm:
    label: OrbitLabel
    S: BlockEndo
    structure: np.ndarray
    model: np.ndarray
    frame: np.ndarray


def normal_form(label, structure=None):
    """The representative of ``label`` on E for ``structure`` (standard by default)."""
    if not isinstance(label, OrbitLabel):
        raise InvalidLabel(f"not an OrbitLabel: {label!r}")
    m = label.m
    if structure is None:
        structure = standard_j(m) if label.side == COMPLEX else standard_omega(m)
    structure = np.asarray(structure, dtype=object)
    if structure.shape != (2 * m, 2 * m):
        raise InvalidLabel(f"structure must be {2 * m}x{2 * m} for m={m}")
    key = label.ell if label.side == COMPLEX else _k_of(label)
    Phi = structure_frame(structure, label.side) @ standard_frame(label.side, key, m)
    model = _model_matrix(label)
    S = BlockEndo(mm(mm(Phi, model), inverse(Phi)))
    return NormalForm(label, S, structure, model, Phi)


# --------------------------------------------------------------- classify

def classify(S, structure, side=COMPLEX, ell=None):
    """The orbit label of S.

    When S lies in both the ell = 1 and ell = -1 sets (diagonal lifts do),
    ell = 1 is reported unless ``ell`` is given.
    """
    M = as_matrix(S)
    structure = np.asarray(structure, dtype=object)
    if M.shape[0] != 2 * structure.shape[0]:
        raise NotInAnyOrbit("S and the structure have incompatible sizes", "dimensions")
    N = M.shape[0]
    if equal(M @ M, eye(N)):
        lam = 1
    elif equal(M @ M, -eye(N)):
        lam = -1
    else:
        raise NotInAnyOrbit("S^2 is not +-id", "S^2 = lambda id")
    m = structure.shape[0] // 2
    check = check_slash_complex if side == COMPLEX else check_slash_symplectic
    ells = (ell,) if ell is not None else (1, -1)
    first = None
    for e in ells:
        rep = check(M, structure, lam, e)
        if rep.ok:
            n = None
            if side == COMPLEX and (lam, e) == (1, 1):
                n = congruence_signature(FormSpec(beta_gram_complex(M, structure), "R", "symmetric"))[0] // 2
            elif side == SYMPLECTIC and (lam, e) == (-1, 1):
                n = congruence_signature(FormSpec(beta_gram_symplectic(M, structure), "R", "symmetric"))[0] // 4
            return OrbitLabel(side, lam, e, m, n)
        first = first or rep
    raise NotInAnyOrbit(f"S is in no ({lam}, ell) set: {first.failed_clause}", first.failed_clause)


# -------------------------------------------------------------- dimensions

def _real_dim(group, *args):
    if group == "O_C":          # O(p, C)
        (p,) = args
        return p * (p - 1)
    if group == "O":            # O(p, q)
        p, q = args
        return (p + q) * (p + q - 1) // 2
    if group == "U":            # U(p, q)
        p, q = args
        return (p + q) ** 2
    if group == "Sp_R":         # Sp(m, R)
        (p,) = args
        return p * (2 * p + 1)
    if group == "SO*":          # SO*(2p)
        (p,) = args
        return p * (2 * p - 1)
    if group == "Sp":           # Sp(p, q)
        p, q = args
        return (p + q) * (2 * (p + q) + 1)
    if group == "GL_R":
        (p,) = args
        return p * p
    if group == "GL_C":
        (p,) = args
        return 2 * p * p
    raise ValueError(group)


def group_table(label):
    """(G, H) as (name, args) pairs from the classification tables."""
    m, n = label.m, label.n
    if label.side == COMPLEX:
        return {
            (1, 1): (("O_C", 2 * m), [("O", n, 2 * m - n)] if n is not None else []),
            (1, -1): (("U", m, m), [("Sp_R", m)]),
            (-1, 1): (("O_C", 2 * m), [("SO*", m)]),
            (-1, -1): (("U", m, m), [("Sp", m // 2, m // 2)]),
        }[(label.lam, label.ell)]
    return {
        (1, 1): (("GL_R", 2 * m), [("GL_R", m), ("GL_R", m)]),
        (1, -1): (("U", m, m), [("GL_C", m)]),
        (-1, 1): (("U", m, m), [("U", n, m - n), ("U", m - n, n)] if n is not None else []),
        (-1, -1): (("GL_R", 2 * m), [("GL_C", m)]),
    }[(label.lam, label.ell)]


def group_dimension(label):
    if not isinstance(label, OrbitLabel):
        raise InvalidLabel(f"not an OrbitLabel: {label!r}")
    G, Hs = group_table(label)
    return _real_dim(*G) - sum(_real_dim(*H) for H in Hs)


def _skew_basis(N):
    out = []
    for a in range(N):
        for b in range(a + 1, N):
            K = zeros(N)
            K[a, b], K[b, a] = Fraction(1), Fraction(-1)
            out.append(K)
    return out


def _unit_of(label, structure):
    if label.side == COMPLEX:
        return make_J(structure, label.ell).matrix, 1
    return make_I(structure, _k_of(label)).matrix, -1


def _nullity(images):
    A = columns([X.reshape(-1) for X in images])
    return A.shape[1] - rank(A)


def linearized_dimension(S, label, structure=None):
    """Nullity of the linearised defining equations at S.

    Unknown dS = G K with K skew (so dS is b-skew) subject to
    dS S + S dS = 0 and dS J_ell + J_ell dS = 0 (complex side) or
    dS I_k - I_k dS = 0 (symplectic side).
    """
    M = as_matrix(S)
    N = M.shape[0]
    m = N // 4
    if structure is None:
        structure = standard_j(m) if label.side == COMPLEX else standard_omega(m)
    U, sgn = _unit_of(label, structure)
    G = pairing_gram(N // 2)
    imgs = []
    for K in _skew_basis(N):
        dS = mm(G, K)
        imgs.append(np.concatenate([(mm(dS, M) + mm(M, dS)).reshape(-1),
                                    (mm(dS, U) + sgn * mm(U, dS)).reshape(-1)]))
    return _nullity(imgs)


def lie_algebra_basis(label, structure=None):
    """Rational basis of Lie(G): b-skew X commuting with J_ell (resp. I_k)."""
    m = label.m
    if structure is None:
        structure = standard_j(m) if label.side == COMPLEX else standard_omega(m)
    U = _unit_of(label, structure)[0]
    N = 4 * m
    G = pairing_gram(2 * m)
    gens = [mm(G, K) for K in _skew_basis(N)]
    A = columns([(mm(X, U) - mm(U, X)).reshape(-1) for X in gens])
    out = []
    for coeffs in kernel_basis(A):
        X = zeros(N)
        for c, Y in zip(coeffs, gens):
            if c != 0:
                X = X + c * Y
        out.append(X)
    return out


def orbit_tangent_dimension(S, label, structure=None):
    """dim of {[X, S] : X in Lie(G)}, the tangent space of the orbit through S."""
    M = as_matrix(S)
    basis = lie_algebra_basis(label, structure)
    A = columns([(mm(X, M) - mm(M, X)).reshape(-1) for X in basis])
    return rank(A)


def random_group_element(label, structure=None, rng=None, terms=3, basis=None):
    """Cayley transform (1 - X)^-1 (1 + X) of a small random X in Lie(G)."""
    rng = rng or _random.Random()
    basis = basis if basis is not None else lie_algebra_basis(label, structure)
    N = basis[0].shape[0]
    while True:
        X = zeros(N)
        for Y in rng.sample(basis, min(terms, len(basis))):
            X = X + Fraction(rng.choice([-2, -1, 1, 2]), rng.choice([1, 2, 3])) * Y
        Mi = eye(N) - X
        if rank(Mi) == N:
            return mm(inverse(Mi), eye(N) + X)


# ---------------------------------------------------------- conjugators

@dataclass
class ConjugatorResult:
    F: np.ndarray
    backend: str
    residuals: dict = field(default_factory=dict)
    basis: object = None

    def to_dict(self):
        return {"backend": self.backend, "residuals": self.residuals}


EXACT_ROWS = {(COMPLEX, 1, -1), (SYMPLECTIC, 1, -1), (SYMPLECTIC, 1, 1), (SYMPLECTIC, -1, -1)}
FLOAT_ROWS = {(COMPLEX, 1, 1), (SYMPLECTIC, -1, 1)}


def backend_for(label):
    key = (label.side, label.lam, label.ell)
    if key in EXACT_ROWS:
        return "exact"
    if key in FLOAT_ROWS:
        return "floating"
    return None


def _fixed_space(X):
    return kernel_basis(X - eye(X.shape[0]))


def _complex_pieces(vectors, unit, limit):
    """Greedy real vectors v_1.. with {v_s, unit v_s} independent, from a unit-stable span."""
    chosen, span = [], []
    for v in vectors:
        if len(chosen) == limit:
            break
        if not in_span(span, v):
            if in_span(span + [v], unit @ v):
                continue
            chosen.append(v)
            span += [v, unit @ v]
    return chosen


def _frame_complex_pm(X, J, G, constant):
    """Frame for complex (+,-): Darboux basis of -b(x, J_- y) on Fix(X)."""
    W = columns(_fixed_space(X))
    theta = -(W.T @ G @ J @ W)
    P = darboux_basis(theta, constant, "blocks")
    basis = W @ P
    return np.hstack([basis, J @ basis])


def _frame_complex_pp(X, J, G, constant=1):
    """Float frame for complex (+,+;n): orthogonal basis of -b(x, J_+ y) on Fix(X)."""
    W = columns(_fixed_space(X))
    h = -(W.T @ G @ J @ W)
    P, d = congruence_diagonalize(FormSpec(h, "R", "symmetric"))
    order = sorted(range(len(d)), key=lambda k: (d[k] < 0, k))
    Wf = to_float(W @ P)
    scale = np.array([np.sqrt(float(constant) / abs(float(d[k]))) for k in order])
    basis = Wf[:, order] * scale
    return np.hstack([basis, to_float(J) @ basis])


def _frame_sympl_pm(X, Im, G):
    """Exact frame for symplectic (+,-): C-basis of W_+ and the b_- dual basis in W_-."""
    N = X.shape[0]
    m = N // 4
    Wp = kernel_basis(X - eye(N))
    Wm = columns(kernel_basis(X + eye(N)))
    us = _complex_pieces(Wp, Im, m)
    # v = Wm c with b(u_s, v) = delta and b(u_s, I_- v) = 0
    rows = [u @ G @ Wm for u in us] + [u @ G @ Im @ Wm for u in us]
    A = np.vstack(rows)
    vs = []
    for t in range(m):
        rhs = np.array([Fraction(int(s == t)) for s in range(m)] + [Fraction(0)] * m, dtype=object)
        c = np.asarray(inverse(A) @ rhs).reshape(-1)
        vs.append(Wm @ c)
    basis = columns(us + vs)
    return np.hstack([basis, Im @ basis])


def _hermitian_gram(vs, Im, G):
    """b_-(v_s, v_t) = b(v_s, v_t) - i b(v_s, I_- v_t)."""
    k = len(vs)
    H = np.empty((k, k), dtype=object)
    for s in range(k):
        for t in range(k):
            H[s, t] = GaussianRational(vs[s] @ G @ vs[t], -(vs[s] @ G @ Im @ vs[t]))
    return H


def _frame_sympl_mp(X, Im, G, constant=1):
    """Float frame for symplectic (-,+;n): unitary bases of the eigenspaces of I_- X."""
    N = X.shape[0]
    m = N // 4
    IX = Im @ X
    out = []
    for delta in (1, -1):
        space = kernel_basis(IX - delta * eye(N))
        vs = _complex_pieces(space, Im, m)
        H = _hermitian_gram(vs, Im, G)
        P, d = congruence_diagonalize(FormSpec(H, "C", "hermitian"))
        d = [x.re if isinstance(x, GaussianRational) else x for x in d]
        order = sorted(range(len(d)), key=lambda k: (d[k] < 0, k))
        Vf = to_float(columns(vs))
        Imf = to_float(Im)
        for k in order:
            coeffs = P[:, k]
            w = np.zeros(N)
            for c, v in zip(coeffs, Vf.T):
                c = complex(c)
                w = w + c.real * v + c.imag * (Imf @ v)
            out.append(w * np.sqrt(float(constant) / abs(float(d[k]))))
    basis = np.column_stack(out)
    return np.hstack([basis, to_float(Im) @ basis])


def _frame_sympl_L(X, Ip, G, lam):
    """Exact frame for symplectic (+,+) / (-,-) via the eigenspaces of I_+."""
    N = X.shape[0]
    m = N // 4
    Em = kernel_basis(Ip + eye(N))   # e-part, where eps acts by -1
    Ep = columns(kernel_basis(Ip - eye(N)))
    Emat = columns(Em)
    if lam == 1:
        plus = [Emat @ c for c in kernel_basis(columns([X @ e - e for e in Em]))]
        minus = [Emat @ c for c in kernel_basis(columns([X @ e + e for e in Em]))]
        basis = plus + minus
    else:
        qs = _complex_pieces(Em, X, m)
        basis = qs + [X @ q for q in qs]
    P = columns(basis)
    # dual basis in E_+ with b(p_a, d_b) = delta / 2
    A = P.T @ G @ Ep
    D = Ep @ inverse(A) * Fraction(1, 2)
    return np.hstack([P, D])


def _frame(X, label, structure, constant=1):
    G = pairing_gram(X.shape[0] // 2)
    key = (label.side, label.lam, label.ell)
    if label.side == COMPLEX:
        J = make_J(structure, label.ell).matrix
        if key == (COMPLEX, 1, -1):
            return _frame_complex_pm(X, J, G, constant)
        if key == (COMPLEX, 1, 1):
            return _frame_complex_pp(X, J, G, constant)
        raise UnsupportedOrbit(f"no conjugator construction for {label.row}")
    k = _k_of(label)
    Ik = make_I(structure, k).matrix
    if key == (SYMPLECTIC, 1, -1):
        return _frame_sympl_pm(X, Ik, G)
    if key == (SYMPLECTIC, -1, 1):
        return _frame_sympl_mp(X, Ik, G, constant)
    return _frame_sympl_L(X, Ik, G, label.lam)


def conjugator(T, label, structure=None, tolerance=DEFAULT_TOLERANCE, constant=1):
    """F in G with T = F S F^-1, S the normal form of ``label``.

    ``constant`` scales the adapted basis (``basis`` in the result) the way
    the form is normalised on it; F does not depend on it.
    """
    m = label.m
    if structure is None:
        structure = standard_j(m) if label.side == COMPLEX else standard_omega(m)
    structure = np.asarray(structure, dtype=object)
    backend = backend_for(label)
    if backend is None:
        raise UnsupportedOrbit(f"no conjugator construction for {label.row}")
    T = as_matrix(T)
    try:
        got = classify(T, structure, label.side, ell=label.ell)
    except NotInAnyOrbit as exc:
        raise NotInOrbit(f"T is not in {label}: {exc}") from None
    if got != label:
        raise NotInOrbit(f"T lies in {got}, not in {label}")
    S = normal_form(label, structure).S.matrix
    A_T = _frame(T, label, structure, constant)
    A_S = _frame(S, label, structure, constant)
    G = pairing_gram(2 * m)
    U, sgn = _unit_of(label, structure)
    if backend == "exact":
        F = A_T @ inverse(A_S)
        checks = {
            "conjugation": equal(F @ S, T @ F),
            "isometry": equal(F.T @ G @ F, G),
            "structure": equal(F @ U, U @ F),
        }
        if not all(checks.values()):
            bad = [k for k, v in checks.items() if not v]
            raise NotInOrbit(f"exact conjugator failed verification: {bad}")
        return ConjugatorResult(F, "exact", {"conjugation": 0.0, "isometry": 0.0, "structure": 0.0}, A_T)
    F = A_T @ np.linalg.inv(A_S)
    Tf, Sf, Gf, Uf = (to_float(x) for x in (T, S, G, U))
    res = {
        "conjugation": float(np.max(np.abs(F @ Sf @ np.linalg.inv(F) - Tf))),
        "isometry": float(np.max(np.abs(F.T @ Gf @ F - Gf))),
        "structure": float(np.max(np.abs(F @ Uf - Uf @ F))),
    }
    if max(res.values()) > tolerance:
        raise ToleranceExceeded(f"floating conjugator residual {max(res.values()):.3e} > {tolerance}", res)
    return ConjugatorResult(F, "floating", res, A_T)


# -------------------------------------------------- quaternionic structures

def _model_complex_action(label):
    """K with S Z = K conj(Z) in the complex model, for the two antilinear quaternionic rows."""
    m = label.m
    if (label.side, label.lam, label.ell) == (COMPLEX, -1, -1):
        k = m // 2
        return block([[_rot(k), zeros(m)], [zeros(m), _rot(k)]])
    if (label.side, label.lam, label.ell) == (COMPLEX, -1, 1):
        return _rot(m)
    raise InvalidLabel(f"{label.row} carries no quaternionic structure")


def _cvec(real_coords):
    N = len(real_coords) // 2
    return np.array([GaussianRational(real_coords[a], real_coords[N + a]) for a in range(N)],
                    dtype=object)


def quaternionic_form(label):
    """Quaternion Gram matrix of C on an H-basis of the model C^{2m}, plus that basis.

    (-,-): C(Z, Z') = B_-(Z, Z') - B_-(Z, S Z') j, expected H-Hermitian and split.
    (-,+): C(Z, Z') = B_+(S Z, Z') - j B_+(Z, Z'), expected H-anti-Hermitian.
    """
    K = _model_complex_action(label)
    m = label.m
    N = 2 * m
    S = lambda Z: K @ np.array([z.conjugate() for z in Z], dtype=object)
    if label.ell == -1:
        Dg = _diag_signs(m, m)
        B = lambda Z, W: sum((Z[a].conjugate() * Dg[a, a] * W[a] for a in range(N)), GaussianRational())
    else:
        B = lambda Z, W: sum((Z[a] * W[a] for a in range(N)), GaussianRational())
    basis = []
    span = []
    E = eye(N)
    for a in range(N):
        Z = np.array([GaussianRational(x) for x in E[:, a]], dtype=object)
        real = lambda V: np.concatenate([[v.re for v in V], [v.im for v in V]])
        cands = [real(Z), real(Z * I), real(S(Z)), real(S(Z) * I)]
        if rank(columns(span + cands)) == len(span) + 4:
            basis.append(Z)
            span += cands
    jq = RationalQuaternion(0, 0, 1, 0)
    h = len(basis)
    C = np.empty((h, h), dtype=object)
    for a in range(h):
        for b in range(h):
            Z, W = basis[a], basis[b]
            if label.ell == -1:
                u, v = B(Z, W), B(Z, S(W))
                C[a, b] = RationalQuaternion.from_complex_pair(u) - RationalQuaternion.from_complex_pair(v) * jq
            else:
                u, v = B(S(Z), W), B(Z, W)
                C[a, b] = RationalQuaternion.from_complex_pair(u) - jq * RationalQuaternion.from_complex_pair(v)
    return C, basis


def quaternionic_checks(label):
    from .linalg import congruence_signature, conj_t

    C, basis = quaternionic_form(label)
    out = {"h_dim": len(basis)}
    if label.ell == -1:
        out["hermitian"] = equal(C, conj_t(C))
        if out["hermitian"]:
            out["signature"] = congruence_signature(FormSpec(C, "H", "hermitian"))
            p, q, z = out["signature"]
            out["split"] = p == q and z == 0
    else:
        out["antihermitian"] = equal(C, -conj_t(C))
    return out
