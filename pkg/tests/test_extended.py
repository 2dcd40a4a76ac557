import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gen import rand_j, rand_matrix, rand_omega, rng_for
from slashgeom.errors import DegenerateForm, NotAComplexStructure
from slashgeom.extended import (
    BlockEndo, ExtendedVector, b_adjoint, b_pm_gram, is_b_skew, make_I, make_J,
    pairing_b, pairing_gram, sesqui_b_ell, sesqui_b_pm, standard_j, standard_omega,
)
from slashgeom.linalg import (
    FormSpec, conj, congruence_signature, eye, equal, kernel_basis, mat, mm, rank,
)
from slashgeom.scalars import EPS, I
from slashgeom.slash import check_generalized, lift_tensor

seeds = st.integers(0, 10 ** 6)


def ev(vec, covec):
    return ExtendedVector(vec, covec)


def rand_ev(rng, n):
    return ExtendedVector.from_full(rand_matrix(rng, 1, 2 * n)[0])


def test_pairing_examples():
    assert pairing_b(ev([1, 0], [1, 0]), ev([1, 0], [1, 0])) == 2
    assert pairing_b(ev([1, 0], [0, 0]), ev([0, 1], [0, 0])) == 0
    assert pairing_b(ev([1, 0], [0, 0]), ev([0, 0], [1, 0])) == 1


@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_pairing_is_split(n):
    assert congruence_signature(pairing_gram(n)) == (n, n, 0)


def test_b_adjoint_examples():
    assert b_adjoint(BlockEndo.identity(2)) == BlockEndo.identity(2)
    r = mat([[1, 2], [0, -1]])
    R = lift_tensor(r)
    assert b_adjoint(R) == -R
    j = standard_j(1)
    J1 = make_J(j, 1)
    assert b_adjoint(J1) == J1


@settings(max_examples=30, deadline=None)
@given(seeds)
def test_b_adjoint_properties(seed):
    rng = rng_for("adj", seed)
    E, F = BlockEndo(rand_matrix(rng, 4)), BlockEndo(rand_matrix(rng, 4))
    assert b_adjoint(E @ F) == b_adjoint(F) @ b_adjoint(E)
    assert b_adjoint(b_adjoint(E)) == E
    x, y = rand_ev(rng, 2), rand_ev(rng, 2)
    assert pairing_b(E @ x, y) == pairing_b(x, b_adjoint(E) @ y)


@settings(max_examples=15, deadline=None)
@given(seeds, st.sampled_from([1, 2]))
def test_make_J(seed, m):
    rng = rng_for("J", seed)
    j, _ = rand_j(rng, m)
    Jp, Jm = make_J(j, 1), make_J(j, -1)
    for J in (Jp, Jm):
        assert equal(mm(J.matrix, J.matrix), -eye(4 * m))
    assert b_adjoint(Jp) == Jp
    assert is_b_skew(Jm)
    x, y = rand_ev(rng, 2 * m), rand_ev(rng, 2 * m)
    assert pairing_b(Jp @ x, y) == pairing_b(x, Jp @ y)
    # J_- is generalized complex, J_+ is not
    assert check_generalized(Jm, -1).ok
    rep = check_generalized(Jp, -1)
    assert not rep.skew_ok and rep.failed_clause == "b-skew"


def test_make_J_rejects():
    with pytest.raises(NotAComplexStructure):
        make_J(eye(2), 1)


def test_make_I_examples():
    w = standard_omega(1)
    Im, Ip = make_I(w, -1), make_I(w, 1)
    assert equal(mm(Im.matrix, Im.matrix), -eye(4))
    assert equal(mm(Ip.matrix, Ip.matrix), eye(4))
    assert len(kernel_basis(Ip.matrix - eye(4))) == 2
    assert len(kernel_basis(Ip.matrix + eye(4))) == 2
    with pytest.raises(DegenerateForm):
        make_I(mat([[0, 0], [0, 0]]), 1)


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_make_I_skew(seed):
    rng = rng_for("I", seed)
    w, _ = rand_omega(rng, 2)
    for k in (1, -1):
        Ik = make_I(w, k)
        assert is_b_skew(Ik)
        assert equal(mm(Ik.matrix, Ik.matrix), k * eye(8))
        x, y = rand_ev(rng, 4), rand_ev(rng, 4)
        assert pairing_b(Ik @ x, y) == -pairing_b(x, Ik @ y)


@settings(max_examples=20, deadline=None)
@given(seeds, st.sampled_from([1, -1]))
def test_sesqui_b_ell(seed, ell):
    rng = rng_for("bell", seed)
    j, _ = rand_j(rng, 1)
    J = make_J(j, ell)
    x, y = rand_ev(rng, 2), rand_ev(rng, 2)
    v = sesqui_b_ell(x, y, j, ell)
    assert I * v == sesqui_b_ell(x, J @ y, j, ell) == ell * sesqui_b_ell(J @ x, y, j, ell)
    if ell == 1:
        assert v == sesqui_b_ell(y, x, j, ell)
    else:
        assert v == sesqui_b_ell(y, x, j, ell).conjugate()
        assert sesqui_b_ell(x, x, j, ell).im == 0


@settings(max_examples=10, deadline=None)
@given(seeds, st.sampled_from([1, 2]))
def test_b_minus_is_split(seed, m):
    # on any C-basis of (E, J_-) the Hermitian Gram of b_- has inertia (m, m)
    rng = rng_for("split", seed)
    j, _ = rand_j(rng, m)
    J = make_J(j, -1)
    basis, span = [], []
    while len(basis) < 2 * m:
        x = rand_ev(rng, 2 * m)
        if rank(np.column_stack(span + [x.full, (J @ x).full])) == len(span) + 2:
            basis.append(x)
            span += [x.full, (J @ x).full]
    H = np.array([[sesqui_b_ell(x, y, j, -1) for y in basis] for x in basis], dtype=object)
    assert equal(H, conj(H).T)
    assert congruence_signature(FormSpec(H, "C", "hermitian")) == (m, m, 0)


@settings(max_examples=20, deadline=None)
@given(seeds, st.sampled_from([1, -1]))
def test_sesqui_b_pm(seed, k):
    rng = rng_for("bpm", seed)
    w, _ = rand_omega(rng, 1)
    Ik = make_I(w, k)
    unit = EPS if k == 1 else I
    x, y = rand_ev(rng, 2), rand_ev(rng, 2)
    v = sesqui_b_pm(x, y, w, k)
    assert unit * v == sesqui_b_pm(x, Ik @ y, w, k) == -sesqui_b_pm(Ik @ x, y, w, k)
    assert v.conjugate() == sesqui_b_pm(y, x, w, k)
    d = sesqui_b_pm(x, x, w, k)
    assert (d.b if k == 1 else d.im) == 0
    assert (v.a if k == 1 else v.re) == pairing_b(x, y)


def test_real_part_of_b_minus_is_b():
    G = b_pm_gram(standard_omega(2), -1)
    re = np.vectorize(lambda z: z.re, otypes=[object])(G)
    assert equal(re, pairing_gram(4))


def test_extended_vector_shapes():
    x = ev([1, 2], [3, 4])
    assert x.n == 2 and list(x.full) == [1, 2, 3, 4]
    assert ExtendedVector.from_full(x.full) == x
    assert x + x - x == x
    with pytest.raises(ValueError):
        ev([1], [1, 2])
