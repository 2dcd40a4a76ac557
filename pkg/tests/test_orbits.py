import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gen import conj_by, pseudo_kahler, rand_j, rand_omega, rng_for
from slashgeom.errors import InvalidLabel, NotInAnyOrbit, NotInOrbit, UnsupportedOrbit
from slashgeom.extended import pairing_gram
from slashgeom.lie import heisenberg_demo
from slashgeom.linalg import equal, eye, inverse, mat, mm, to_float
from slashgeom.orbits import (
    OrbitLabel, all_labels, backend_for, classify, conjugator, group_dimension,
    linearized_dimension, normal_form, orbit_tangent_dimension, quaternionic_checks,
    random_group_element,
)

from slashgeom.slash import check_slash_complex, check_slash_symplectic, lift_tensor, poisson_lift

seeds = st.integers(0, 10 ** 6)
LABELS_2 = all_labels(1) + all_labels(2)


def real_matrix(f, N):
    """Real (X, Y) matrix of an R-linear map f on C^N, from its action on e_a and i e_a."""
    cols = []
    for a in range(2 * N):
        z = np.zeros(N, dtype=complex)
        z[a % N] = 1 if a < N else 1j
        w = f(z)
        cols.append(np.concatenate([w.real, w.imag]))
    return mat(np.rint(np.array(cols).T).astype(int).tolist())


def check_member(nf):
    lab = nf.label
    check = check_slash_complex if lab.side == "complex" else check_slash_symplectic
    return check(nf.S, nf.structure, lab.lam, lab.ell).ok


# ----------------------------------------------------------- normal forms

def test_complex_pm_m1():
    nf = normal_form(OrbitLabel("complex", 1, -1, 1))
    want = real_matrix(lambda v: np.array([v[1].conjugate(), v[0].conjugate()]), 2)
    assert equal(nf.model, want)
    assert check_member(nf)


def test_complex_mm_m2():
    nf = normal_form(OrbitLabel("complex", -1, -1, 2))
    f = lambda v: np.array([-v[1], v[0], -v[3], v[2]]).conjugate()
    assert equal(nf.model, real_matrix(f, 4))
    assert check_member(nf)


def test_complex_pp_paper_representative():
    nf = normal_form(OrbitLabel("complex", 1, 1, 1, 1))
    f = lambda v: np.array([1j * v[0].conjugate(), -1j * v[1].conjugate()])
    assert equal(nf.model, real_matrix(f, 2))


def test_symplectic_mp_m2():
    nf = normal_form(OrbitLabel("symplectic", -1, 1, 2, 1))
    f = lambda v: np.array([-1j * v[2], 1j * v[3], -1j * v[0], 1j * v[1]])
    assert equal(nf.model, real_matrix(f, 4))
    assert check_member(nf)


@pytest.mark.parametrize("label", LABELS_2 + all_labels(3), ids=str)
def test_normal_forms_are_members(label):
    nf = normal_form(label)
    assert check_member(nf)
    assert classify(nf.S, nf.structure, label.side, ell=label.ell) == label
    assert equal(mm(mm(inverse(nf.frame), nf.S.matrix), nf.frame), nf.model)


@settings(max_examples=10, deadline=None)
@given(seeds, st.sampled_from(LABELS_2))
def test_normal_forms_for_other_structures(seed, label):
    rng = rng_for("nfs", seed)
    structure = (rand_j if label.side == "complex" else rand_omega)(rng, label.m)[0]
    nf = normal_form(label, structure)
    assert check_member(nf)
    assert classify(nf.S, structure, label.side, ell=label.ell) == label


def test_invalid_labels():
    with pytest.raises(InvalidLabel):
        OrbitLabel("complex", -1, -1, 1)
    with pytest.raises(InvalidLabel):
        OrbitLabel("complex", 1, 1, 1)  # missing n
    with pytest.raises(InvalidLabel):
        OrbitLabel("complex", 1, -1, 1, 0)
    with pytest.raises(InvalidLabel):
        OrbitLabel("symplectic", -1, 1, 2, 3)
    with pytest.raises(InvalidLabel):
        OrbitLabel("real", 1, 1, 1)


# --------------------------------------------------------------- classify

def test_classify_examples():
    H = heisenberg_demo()
    assert classify(H.S, H.j) == OrbitLabel("complex", 1, 1, 2, 2)
    for m in (2, 4):
        j, omega, _ = pseudo_kahler(rng_for("split", m), m, m // 2)
        got = classify(lift_tensor(j), omega, "symplectic")
        assert got == OrbitLabel("symplectic", -1, 1, m, m // 2)
    pi = mat([[0, 1, 0, 0], [-1, 0, 0, 0], [0, 0, 0, 1], [0, 0, -1, 0]])
    with pytest.raises(NotInAnyOrbit) as exc:
        classify(poisson_lift(pi), H.j)
    assert exc.value.clause == "anticommutation with J_ell"


def test_classify_rejects_bad_square():
    with pytest.raises(NotInAnyOrbit) as exc:
        classify(2 * eye(8), heisenberg_demo().j)
    assert exc.value.clause == "S^2 = lambda id"


@settings(max_examples=15, deadline=None)
@given(seeds, st.sampled_from(LABELS_2))
def test_classify_constant_on_conjugates(seed, label):
    S = normal_form(label).S.matrix
    g = random_group_element(label, rng=rng_for("cc", seed))
    structure = normal_form(label).structure
    assert classify(conj_by(g, S), structure, label.side, ell=label.ell) == label


def test_label_separation():
    for side, lam, ell, m, top in (("complex", 1, 1, 2, 4), ("symplectic", -1, 1, 2, 2)):
        labels = [OrbitLabel(side, lam, ell, m, n) for n in range(top + 1)]
        forms = [normal_form(x).S for x in labels]
        for a in range(len(labels)):
            for b in range(len(labels)):
                if a != b:
                    assert forms[a] != forms[b]
                    with pytest.raises(NotInOrbit):
                        conjugator(forms[a], labels[b])


# -------------------------------------------------------------- dimensions

def test_group_dimension_examples():
    assert group_dimension(OrbitLabel("complex", 1, -1, 1)) == 1
    assert group_dimension(OrbitLabel("symplectic", 1, -1, 1)) == 2
    assert group_dimension(OrbitLabel("symplectic", 1, 1, 1)) == 2
    with pytest.raises(InvalidLabel):
        group_dimension(("complex", 1, 1, 1))


def test_linearized_dimension_examples():
    lab = OrbitLabel("complex", 1, -1, 1)
    assert linearized_dimension(normal_form(lab).S, lab) == 1
    lab = OrbitLabel("symplectic", -1, -1, 1)
    assert linearized_dimension(normal_form(lab).S, lab) == 2
    lab = OrbitLabel("complex", 1, 1, 1, 1)
    assert linearized_dimension(normal_form(lab).S, lab) == 1


@pytest.mark.parametrize("label", LABELS_2, ids=str)
def test_dimension_oracles_agree(label):
    S = normal_form(label).S
    d = group_dimension(label)
    assert linearized_dimension(S, label) == d
    assert orbit_tangent_dimension(S, label) == d


# ------------------------------------------------------------- conjugators

@pytest.mark.parametrize("label", [x for x in LABELS_2 if backend_for(x)], ids=str)
def test_conjugator_of_normal_form_is_identity(label):
    res = conjugator(normal_form(label).S, label)
    F = to_float(res.F) if res.backend == "exact" else res.F
    assert np.allclose(F, np.eye(F.shape[0]), atol=1e-12)
    if res.backend == "exact":
        assert equal(res.F, eye(res.F.shape[0]))


@settings(max_examples=20, deadline=None)
@given(seeds, st.sampled_from([x for x in LABELS_2 if backend_for(x)]))
def test_conjugator_round_trip(seed, label):
    nf = normal_form(label)
    g0 = random_group_element(label, rng=rng_for("rt", seed))
    T = conj_by(g0, nf.S.matrix)
    res = conjugator(T, label)
    assert res.backend == backend_for(label)
    G = pairing_gram(2 * label.m)
    if res.backend == "exact":
        assert all(v == 0 for v in res.residuals.values())
        assert equal(mm(res.F, nf.S.matrix), mm(T, res.F))
        assert equal(mm(mm(res.F.T, G), res.F), G)
    else:
        F, Sf, Tf = res.F, to_float(nf.S.matrix), to_float(T)
        assert max(res.residuals.values()) <= 1e-9
        assert np.allclose(F @ Sf @ np.linalg.inv(F), Tf, atol=1e-9)


@settings(max_examples=8, deadline=None)
@given(seeds, st.sampled_from([x for x in LABELS_2 if backend_for(x)]))
def test_conjugator_other_structure(seed, label):
    rng = rng_for("cos", seed)
    structure = (rand_j if label.side == "complex" else rand_omega)(rng, label.m)[0]
    nf = normal_form(label, structure)
    g0 = random_group_element(label, structure, rng=rng)
    res = conjugator(conj_by(g0, nf.S.matrix), label, structure)
    assert max(res.residuals.values()) <= 1e-9


def test_paper_normalization_leaves_F_alone():
    for label in (OrbitLabel("complex", 1, -1, 2), OrbitLabel("symplectic", 1, -1, 2)):
        T = conj_by(random_group_element(label, rng=rng_for("pn")), normal_form(label).S.matrix)
        a, b = conjugator(T, label), conjugator(T, label, constant=2)
        assert equal(a.F, b.F)


def test_unsupported_rows():
    for label in (OrbitLabel("complex", -1, -1, 2), OrbitLabel("complex", -1, 1, 1)):
        with pytest.raises(UnsupportedOrbit):
            conjugator(normal_form(label).S, label)


def test_conjugator_rejects_wrong_row():
    a, b = OrbitLabel("symplectic", -1, -1, 1), OrbitLabel("symplectic", 1, 1, 1)
    with pytest.raises(NotInOrbit):
        conjugator(normal_form(a).S, b)


def test_diagonal_lifts_sit_in_both_symplectic_rows():
    # R = diag(r, -r^T) commutes with I_k iff r is omega-skew, whatever k is
    nf = normal_form(OrbitLabel("symplectic", 1, -1, 1))
    assert equal(nf.S.B, 0 * nf.S.B) and equal(nf.S.C, 0 * nf.S.C)
    for ell in (1, -1):
        assert check_slash_symplectic(nf.S, nf.structure, 1, ell).ok


# ----------------------------------------------------------- quaternionic

@pytest.mark.parametrize("m", [2, 4])
def test_quaternionic_minus_minus(m):
    out = quaternionic_checks(OrbitLabel("complex", -1, -1, m))
    assert out["h_dim"] == m
    assert out["hermitian"] and out["split"]


@pytest.mark.parametrize("m", [1, 2, 3])
def test_quaternionic_minus_plus(m):
    out = quaternionic_checks(OrbitLabel("complex", -1, 1, m))
    assert out["h_dim"] == m and out["antihermitian"]


def test_quaternionic_other_rows_rejected():
    with pytest.raises(InvalidLabel):
        quaternionic_checks(OrbitLabel("complex", 1, -1, 1))
