"""Slash structures: constructors, algebraic verifiers and invariants.

Everything here is pointwise linear algebra on E = V + V*.  Courant
integrability needs a Lie algebra and lives in :mod:`slashgeom.lie`.
"""

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateForm, NotASlashStructure, ShapeMismatch
from .extended import (
    BlockEndo, as_matrix, b_ell_gram, b_pm_gram, check_complex_structure, check_symplectic,
    flat, is_split, make_I, make_J, pairing_gram, sharp, unflat,
)
from .linalg import (
    FormSpec, block, congruence_signature, conj, equal, eye, inverse, is_zero, kernel_basis, mm,
    rank, zeros,
)

COMPLEX = "complex"
SYMPLECTIC = "symplectic"


def _endo(S):
    return S if isinstance(S, BlockEndo) else BlockEndo(S)


def _basis(N, k):
    e = np.empty(N, dtype=object)
    e.fill(0)
    e[k] = 1
    return e


def _column_witness(defect, clause):
    """First basis vector e_k whose image under ``defect`` is nonzero."""
    N = defect.shape[1]
    for k in range(N):
        if not is_zero(defect[:, k]):
            return {"clause": clause, "x": _basis(N, k), "y": None, "value": defect[:, k]}
    return None


def _pair_witness(defect, clause):
    """First basis pair (e_a, e_b) on which a bilinear defect is nonzero."""
    N = defect.shape[0]
    for a in range(N):
        for b in range(defect.shape[1]):
            if defect[a, b] != 0:
                return {"clause": clause, "x": _basis(N, a), "y": _basis(N, b), "value": defect[a, b]}
    return None


def _split_witness(M, clause):
    N = M.shape[0]
    plus = len(kernel_basis(M - eye(N)))
    minus = len(kernel_basis(M + eye(N)))
    basis = kernel_basis(M - eye(N)) or kernel_basis(M + eye(N))
    return {"clause": clause, "x": basis[0] if basis else None, "y": None,
            "value": f"eigenspace dimensions (+1: {plus}, -1: {minus})"}


@dataclass
class SlashReport:
    side: str
    lam: int
    ell: int
    squares_ok: bool
    skew_ok: bool
    split_ok: bool
    compat_ok: object = None
    form_criterion_ok: object = None
    failure_witness: object = None
    witnesses: list = field(default_factory=list)

    @property
    def ok(self):
        flags = [self.squares_ok, self.skew_ok, self.split_ok]
        if self.compat_ok is not None:
            flags.append(self.compat_ok)
        return all(flags)

    @property
    def failed_clause(self):
        return None if self.failure_witness is None else self.failure_witness["clause"]


def _generalized_parts(S, lam):
    M = as_matrix(S)
    N = M.shape[0]
    G = pairing_gram(N // 2)
    witnesses = []
    sq_defect = mm(M, M) - lam * eye(N)
    squares_ok = is_zero(sq_defect)
    if not squares_ok:
        witnesses.append(_column_witness(sq_defect, "S^2 = lambda id"))
    skew_defect = mm(M.T, G) + mm(G, M)
    skew_ok = is_zero(skew_defect)
    if not skew_ok:
        witnesses.append(_pair_witness(skew_defect, "b-skew"))
    if lam == -1:
        split_ok = squares_ok
    else:
        split_ok = squares_ok and is_split(M)
        if squares_ok and not split_ok:
            witnesses.append(_split_witness(M, "split"))
    return squares_ok, skew_ok, split_ok, witnesses


def _sign(x):
    if x not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {x!r}")
    return int(x)


def check_generalized(S, lam):
    """S^2 = lam id, S b-skew and (for lam = 1) split."""
    lam = _sign(lam)
    sq, sk, sp, w = _generalized_parts(S, lam)
    return SlashReport("generalized", lam, 0, sq, sk, sp, None, None, w[0] if w else None, w)


def check_slash_complex(S, j, lam, ell):
    """Membership in the (lam, ell) set on the complex side.

    Also evaluates the sesquilinear criterion b_ell(Sx, Sy) = -lam conj(b_ell(x, y))
    on all basis pairs; for S^2 = lam id it agrees with skew + anticommutation.
    """
    lam, ell = _sign(lam), _sign(ell)
    j = check_complex_structure(j)
    M = as_matrix(S)
    if M.shape[0] != 2 * j.shape[0]:
        raise ShapeMismatch(f"S is {M.shape[0]}x{M.shape[0]} but j acts on R^{j.shape[0]}")
    sq, sk, sp, w = _generalized_parts(M, lam)
    J = make_J(j, ell).matrix
    anti = mm(M, J) + mm(J, M)
    compat = is_zero(anti)
    if not compat:
        w.append(_column_witness(anti, "anticommutation with J_ell"))
    Gl = b_ell_gram(j, ell)
    crit_defect = mm(mm(M.T, Gl), M) + lam * conj(Gl)
    crit = is_zero(crit_defect)
    if not crit:
        w.append(_pair_witness(crit_defect, "form criterion"))
    rep = SlashReport(COMPLEX, lam, ell, sq, sk, sp, compat, crit, None, w)
    rep.failure_witness = _first_failure(rep)
    return rep


def check_slash_symplectic(S, omega, lam, ell):
    """Membership in the (lam, ell) set on the symplectic side.

    With k = lam*ell: S commutes with I_k, and for ell = 1 also I_k S is split.
    split_ok covers both splitness requirements, compat_ok covers commutation
    together with the I_k S splitness it depends on.  The criterion
    b_k(Sx, Sy) = -lam b_k(x, y) is evaluated alongside.
    """
    lam, ell = _sign(lam), _sign(ell)
    omega = check_symplectic(omega)
    M = as_matrix(S)
    if M.shape[0] != 2 * omega.shape[0]:
        raise ShapeMismatch(f"S is {M.shape[0]}x{M.shape[0]} but omega acts on R^{omega.shape[0]}")
    k = lam * ell
    sq, sk, sp, w = _generalized_parts(M, lam)
    Ik = make_I(omega, k).matrix
    comm = mm(M, Ik) - mm(Ik, M)
    commutes = is_zero(comm)
    if not commutes:
        w.append(_column_witness(comm, "commutation with I_k"))
    iks_split = True
    if ell == 1:
        iks_split = is_split(mm(Ik, M))
        if not iks_split:
            w.append(_split_witness(Ik @ M, "I_k S split"))
    Gk = b_pm_gram(omega, k)
    crit_defect = mm(mm(M.T, Gk), M) + lam * Gk
    crit = is_zero(crit_defect)
    if not crit:
        w.append(_pair_witness(crit_defect, "form criterion"))
    rep = SlashReport(SYMPLECTIC, lam, ell, sq, sk, sp and iks_split,
                      commutes and iks_split, crit, None, w)
    rep.failure_witness = _first_failure(rep)
    return rep


_ORDER = ["S^2 = lambda id", "b-skew", "split", "anticommutation with J_ell",
          "commutation with I_k", "I_k S split", "form criterion"]


def _first_failure(rep):
    if rep.ok:
        return None
    for clause in _ORDER:
        for wt in rep.witnesses:
            if wt is not None and wt["clause"] == clause:
                return wt
    return None


# ---------------------------------------------------------------- signatures

@dataclass(frozen=True)
class SignatureResult:
    n: int
    inertia: tuple
    shape_ok: bool = True


def beta_gram_complex(S, j):
    """Gram of beta_S(x, y) = b(S J_+ x, y)."""
    M = as_matrix(S)
    J = make_J(j, 1).matrix
    return mm(mm(M, J).T, pairing_gram(M.shape[0] // 2))


def beta_gram_symplectic(S, omega):
    """Gram of beta_S(x, y) = b(I_- S x, y)."""
    M = as_matrix(S)
    Im = make_I(omega, -1).matrix
    return mm(mm(Im, M).T, pairing_gram(M.shape[0] // 2))


def sig_complex_11(S, j):
    rep = check_slash_complex(S, j, 1, 1)
    if not rep.ok:
        raise NotASlashStructure(f"not a (1,1)-structure: {rep.failed_clause}", rep.failed_clause)
    G = beta_gram_complex(S, j)
    p, q, z = congruence_signature(FormSpec(G, "R", "symmetric"))
    m = G.shape[0] // 4
    n = p // 2
    return SignatureResult(n, (p, q, z), (p, q, z) == (2 * n, 4 * m - 2 * n, 0))


def sig_symplectic_m11(S, omega):
    rep = check_slash_symplectic(S, omega, -1, 1)
    if not rep.ok:
        raise NotASlashStructure(f"not a (-1,1)-structure: {rep.failed_clause}", rep.failed_clause)
    G = beta_gram_symplectic(S, omega)
    p, q, z = congruence_signature(FormSpec(G, "R", "symmetric"))
    m = G.shape[0] // 4
    n = p // 4
    return SignatureResult(n, (p, q, z), (p, q, z) == (4 * n, 4 * m - 4 * n, 0))


# ------------------------------------------------------------------- lifts

def lift_tensor(r):
    r = np.asarray(r, dtype=object)
    n = r.shape[0]
    return BlockEndo.from_blocks(r, zeros(n), zeros(n), -r.T)


def lift_two_form(theta, lam):
    """Anti-diagonal (0, lam flat(theta)^-1; flat(theta), 0)."""
    theta = np.asarray(theta, dtype=object)
    if not equal(theta, -theta.T):
        raise ValueError("theta is not skew-symmetric")
    if rank(theta) < theta.shape[0]:
        raise DegenerateForm("theta is degenerate")
    W = flat(theta)
    n = W.shape[0]
    return BlockEndo.from_blocks(zeros(n), _sign(lam) * inverse(W), W, zeros(n))


def _is_symmetric_for(form, t):
    """form(t x, y) == form(x, t y)."""
    return equal(t.T @ form, form @ t)


def _is_skew_for(form, t):
    return equal(t.T @ form, -(form @ t))


def extract_interpolants(R, Q, structure, lam, ell, side=COMPLEX, lie=None):
    """Read (r, theta) off a diagonal member R and an anti-diagonal member Q.

    Returns ``(r, theta, verdicts)`` where theta is the Gram matrix of the
    two-form and ``verdicts`` maps each conclusion of the interpolation
    theorem to a boolean.  With ``lie`` data the differential conclusions
    (closedness of theta, Lie-subalgebra eigendistributions of r) are added.
    """
    R, Q = _endo(R), _endo(Q)
    lam, ell = _sign(lam), _sign(ell)
    if not R.is_diagonal():
        raise ShapeMismatch("R must be block diagonal")
    if not Q.is_antidiagonal():
        raise ShapeMismatch("Q must be block anti-diagonal")
    check = check_slash_complex if side == COMPLEX else check_slash_symplectic
    for name, X in (("R", R), ("Q", Q)):
        rep = check(X, structure, lam, ell)
        if not rep.ok:
            raise NotASlashStructure(f"{name} fails {rep.failed_clause}", rep.failed_clause)
    r = R.A
    theta = unflat(Q.C)
    n = r.shape[0]
    v = {}
    v["R_is_lift"] = equal(R.D, -r.T)
    v["Q_is_lift"] = equal(Q.B, lam * inverse(Q.C))
    v["r_squared"] = equal(r @ r, lam * eye(n))
    v["r_split"] = lam == -1 or len(kernel_basis(r - eye(n))) * 2 == n
    v["theta_skew"] = equal(theta, -theta.T)
    v["theta_nondegenerate"] = rank(theta) == n
    if side == COMPLEX:
        j = np.asarray(structure, dtype=object)
        v["r_anticommutes_j"] = equal(r @ j, -(j @ r))
        if ell == 1:
            v["j_skew_for_theta"] = _is_skew_for(theta, j)
        else:
            v["j_symmetric_for_theta"] = _is_symmetric_for(theta, j)
    else:
        omega = np.asarray(structure, dtype=object)
        v["r_skew_for_omega"] = _is_skew_for(omega, r)
        A = inverse(flat(omega)) @ flat(theta)
        v["A_squared"] = equal(A @ A, ell * eye(n))
        v["A_symmetric_for_omega"] = _is_symmetric_for(omega, A)
        if ell == 1:
            v["A_split"] = len(kernel_basis(A - eye(n))) * 2 == n
    if lie is not None:
        from .lie import d_closed_2form, tensor_eigen_subalgebras

        v["theta_closed"] = d_closed_2form(theta, lie)
        v["r_integrable"] = tensor_eigen_subalgebras(r, lie, lam)
    return r, theta, v


# ----------------------------------------------------------- block readers

@dataclass(frozen=True)
class CrainicBlocks:
    A: np.ndarray
    theta_flat: np.ndarray
    pi_sharp: np.ndarray
    lam: int

    @property
    def theta(self):
        return unflat(self.theta_flat)

    @property
    def pi(self):
        return self.pi_sharp.T


def crainic_blocks(S, lam):
    """Decompose a generalized (para)complex S as (A, pi_sharp; theta_flat, -A^T)."""
    S = _endo(S)
    lam = _sign(lam)
    A, P, T, D = S.A, S.B, S.C, S.D
    n = A.shape[0]
    relations = [
        ("lower-right block equals -A*", equal(D, -A.T)),
        ("theta skew", equal(T, -T.T)),
        ("pi skew", equal(P, -P.T)),
        ("A^2 + pi_sharp theta_flat = lambda id", equal(A @ A + P @ T, lam * eye(n))),
        ("theta_flat A = A* theta_flat", equal(T @ A, A.T @ T)),
        ("pi_sharp A* = A pi_sharp", equal(P @ A.T, A @ P)),
    ]
    for name, good in relations:
        if not good:
            raise NotASlashStructure(f"relation violated: {name}", name)
    return CrainicBlocks(A, T, P, lam)


@dataclass(frozen=True)
class SymplecticSlashBlocks:
    A: np.ndarray
    B: np.ndarray
    omega: np.ndarray
    lam: int
    ell: int

    def matriz(self):
        """The block matrix (ell B, A; lam A, B), which squares to the identity for ell = 1."""
        return block([[self.ell * self.B, self.A], [self.lam * self.A, self.B]])


def symplectic_slash_blocks(S, omega, lam, ell):
    S = _endo(S)
    lam, ell = _sign(lam), _sign(ell)
    rep = check_slash_symplectic(S, omega, lam, ell)
    if not rep.ok:
        raise NotASlashStructure(f"not a ({lam},{ell})-structure: {rep.failed_clause}", rep.failed_clause)
    cb = crainic_blocks(S, lam)
    W = flat(omega)
    Winv = inverse(W)
    A = cb.A
    B = Winv @ cb.theta_flat
    n = A.shape[0]
    relations = [
        ("pi_sharp = lam ell B flat(omega)^-1", equal(cb.pi_sharp, lam * ell * (B @ Winv))),
        ("lam A^2 + ell B^2 = id", equal(lam * (A @ A) + ell * (B @ B), eye(n))),
        ("AB + BA = 0", is_zero(A @ B + B @ A)),
        ("flat(omega) A = -A* flat(omega)", equal(W @ A, -(A.T @ W))),
    ]
    out = SymplecticSlashBlocks(A, B, np.asarray(omega, dtype=object), lam, ell)
    if ell == 1:
        phi = block([[eye(n), zeros(n)], [zeros(n), W]])
        conj_form = lam * (inverse(phi) @ S.matrix @ make_I(omega, lam).matrix @ phi)
        relations.append(("lam phi^-1 S I_lam phi equals the (B, A; lam A, B) matrix",
                          equal(conj_form, out.matriz())))
        relations.append(("(B, A; lam A, B) split", is_split(out.matriz())))
    for name, good in relations:
        if not good:
            raise NotASlashStructure(f"relation violated: {name}", name)
    return out


# ---------------------------------------------------------------- B-fields

def bfield_matrix(omega2):
    W = flat(omega2)
    n = W.shape[0]
    return BlockEndo.from_blocks(eye(n), zeros(n), W, eye(n))


def bfield(omega2, S):
    """B S B^-1 with B = (id, 0; flat(omega2), id)."""
    omega2 = np.asarray(omega2, dtype=object)
    if not equal(omega2, -omega2.T):
        raise ValueError("B-field form must be skew-symmetric")
    B = bfield_matrix(omega2)
    G = pairing_gram(B.n)
    assert equal(B.matrix.T @ G @ B.matrix, G), "B-field is not a b-isometry"
    return B @ _endo(S) @ bfield_matrix(-omega2)


def bfield_preserves(omega2, j, lam, ell):
    """Whether B_omega2 commutes with J_ell, i.e. flat(omega2) j = ell j^T flat(omega2)."""
    _sign(lam)
    W = flat(omega2)
    j = np.asarray(j, dtype=object)
    return equal(W @ j, _sign(ell) * (j.T @ W))


def poisson_lift(pi):
    """u + sigma -> (u + pi_sharp sigma, -sigma)."""
    pi = np.asarray(pi, dtype=object)
    if not equal(pi, -pi.T):
        raise ValueError("pi must be skew-symmetric")
    n = pi.shape[0]
    return BlockEndo.from_blocks(eye(n), sharp(pi), zeros(n), -eye(n))
