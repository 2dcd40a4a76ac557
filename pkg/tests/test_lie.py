from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from gen import change_basis, form_space, rand_combo, rand_invertible, rand_matrix, rng_for, small_algebras
from slashgeom.errors import DimensionMismatch, NotACirclePoint
from slashgeom.extended import BlockEndo, ExtendedVector, flat, make_I, unflat
from slashgeom.lie import (
    LieAlgebra, courant_bracket_li, d_closed_2form, d_two_form, eigensection_involutive,
    ell_symplectic_check, ell_symplectic_from_foliations, heisenberg_demo, heisenberg_pattern,
    heisenberg_times_r, is_integrable_slash, is_symplectic_li, jacobi_check,
    nontrivial_obstruction, tensor_eigen_subalgebras, theta_e,
)
from slashgeom.linalg import equal, eye, inverse, is_zero, mat, mm, rank, zeros
from slashgeom.scalars import I
from slashgeom.slash import (
    bfield, bfield_preserves, check_slash_complex, lift_tensor, lift_two_form, sig_complex_11,
)

seeds = st.integers(0, 10 ** 6)
H = heisenberg_demo()
ZOO = small_algebras()
EVEN = [g for g in ZOO if g.dim % 2 == 0]


def unit(n, k):
    v = zeros(n, 1)[:, 0]
    v[k] = 1
    return v


def closed_forms(g, *extra):
    """Basis of the closed skew forms on g satisfying any extra linear constraints."""
    d = lambda X: np.array(list(d_two_form(X, g).values()) or [0], dtype=object)
    return form_space([d, *extra], g.dim)


# ----------------------------------------------------------------- brackets

def test_jacobi_examples():
    assert jacobi_check(heisenberg_times_r())
    assert jacobi_check(LieAlgebra.abelian(4))
    bad = LieAlgebra.from_brackets(3, {(0, 1): {0: 1}, (0, 2): {1: 1}})
    assert not jacobi_check(bad)


def test_zoo_is_jacobi():
    assert all(jacobi_check(g) for g in ZOO)


def test_courant_examples():
    g = heisenberg_times_r()
    e = lambda k: ExtendedVector(unit(4, k), zeros(4, 1)[:, 0])
    ec = lambda k: ExtendedVector(zeros(4, 1)[:, 0], unit(4, k))
    assert courant_bracket_li(e(0), e(1), g) == e(2)
    # L_{e1} e^3 = -e^3([e1, .]) and [e1, e2] = e3, so the result is -e^2
    assert courant_bracket_li(e(0), ec(2), g) == ExtendedVector(zeros(4, 1)[:, 0], -unit(4, 1))
    a = LieAlgebra.abelian(3)
    rng = rng_for("ab")
    s1 = ExtendedVector(*rand_matrix(rng, 2, 3))
    s2 = ExtendedVector(*rand_matrix(rng, 2, 3))
    assert courant_bracket_li(s1, s2, a) == ExtendedVector(zeros(3, 1)[:, 0], zeros(3, 1)[:, 0])
    with pytest.raises(DimensionMismatch):
        courant_bracket_li(s1, s1, g)


@settings(max_examples=30, deadline=None)
@given(seeds, st.integers(0, len(ZOO) - 1))
def test_courant_antisymmetric_and_restricts(seed, which):
    rng = rng_for("cou", seed)
    g = ZOO[which]
    g = change_basis(g, rand_invertible(rng, g.dim))
    assert jacobi_check(g)
    n = g.dim
    s1 = ExtendedVector(*rand_matrix(rng, 2, n))
    s2 = ExtendedVector(*rand_matrix(rng, 2, n))
    a, b = courant_bracket_li(s1, s2, g), courant_bracket_li(s2, s1, g)
    assert equal(a.full, -b.full)
    assert equal(a.vec, g.bracket(s1.vec, s2.vec))
    assert equal(courant_bracket_li(s1, s1, g).full, zeros(2 * n, 1)[:, 0])


# ------------------------------------------------------------------- forms

def test_d_closed_examples():
    g = heisenberg_times_r()
    assert not d_closed_2form(theta_e(), g)
    assert d_two_form(theta_e(), g)[(0, 1, 3)] == -1
    assert d_closed_2form(heisenberg_pattern(1, 0, 0), g)
    a = LieAlgebra.abelian(4)
    assert d_closed_2form(rand_combo(rng_for("abc"), form_space([], 4)), a)


def test_is_symplectic_examples():
    g = heisenberg_times_r()
    assert is_symplectic_li(heisenberg_pattern(1, 0, 0), g)
    assert not is_symplectic_li(theta_e(), g)
    degenerate = zeros(4)
    degenerate[0, 1], degenerate[1, 0] = 1, -1
    assert not is_symplectic_li(degenerate, LieAlgebra.abelian(4))


@settings(max_examples=20, deadline=None)
@given(seeds, st.integers(-3, 3), st.integers(-3, 3), st.integers(-3, 3))
def test_heisenberg_pattern_is_closed(seed, a, b, c):
    # checked directly, independent of where the pattern came from
    g = heisenberg_times_r()
    for sign in (1, -1):
        P = heisenberg_pattern(a, b, c, sign)
        assert equal(P, -P.T) and d_closed_2form(P, g)
        assert is_symplectic_li(P, g) == (a * a + b * b != 0)


# ----------------------------------------------------------- eigensections

def test_eigensection_examples():
    g = heisenberg_times_r()
    w = heisenberg_pattern(1, 0, 0)
    S = make_I(w, -1)
    assert eigensection_involutive(S, I, g) and eigensection_involutive(S, -I, g)
    assert not eigensection_involutive(make_I(theta_e(), -1), I, g)
    assert eigensection_involutive(lift_tensor(H.R), 1, g)


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(0, len(EVEN) - 1), st.booleans())
def test_antidiagonal_eigensections_iff_closed(seed, which, closed):
    rng = rng_for("anti", seed)
    g = EVEN[which]
    n = g.dim
    basis = closed_forms(g) if closed else form_space([], n)
    for _ in range(20):
        theta = rand_combo(rng, basis)
        if rank(theta) == n:
            break
    else:
        return
    Q = lift_two_form(theta, 1)
    plus, minus = eigensection_involutive(Q, 1, g), eigensection_involutive(Q, -1, g)
    dtheta = d_closed_2form(theta, g)
    assert plus == minus == dtheta
    if closed:
        assert dtheta


@settings(max_examples=25, deadline=None)
@given(seeds, st.integers(0, len(EVEN) - 1))
def test_diagonal_plus_space_gives_subalgebra(seed, which):
    rng = rng_for("diag", seed)
    g = EVEN[which]
    n = g.dim
    P = rand_invertible(rng, n, -1, 1)
    D = mat(np.diag([1] * (n // 2) + [-1] * (n // 2)).tolist())
    r = P @ D @ inverse(P)
    R = lift_tensor(r)
    if eigensection_involutive(R, 1, g):
        assert tensor_eigen_subalgebras(r, g, 1, plus_only=True)


def test_diagonal_implication_not_vacuous():
    r = H.R
    assert eigensection_involutive(lift_tensor(r), 1, H.g)
    assert tensor_eigen_subalgebras(r, H.g, 1, plus_only=True)


# ------------------------------------------------------------ integrability

def test_integrable_examples():
    assert is_integrable_slash(H.S, 1, False, H.g, j=H.j)
    assert is_integrable_slash(H.s_of(Fraction(3, 5), Fraction(4, 5)), 1, False, H.g, j=H.j)
    Q = lift_two_form(theta_e(), 1)
    assert check_slash_complex(Q, H.j, 1, 1).ok
    v = is_integrable_slash(Q, 1, False, H.g, j=H.j)
    assert not v and v.spaces == {"+1": False, "-1": False}


@settings(max_examples=15, deadline=None)
@given(seeds)
def test_integrability_bfield_invariant(seed):
    rng = rng_for("bfi", seed)
    j = H.j
    basis = closed_forms(H.g, lambda X: X @ j - j.T @ X)
    w2 = rand_combo(rng, basis)
    assert d_closed_2form(w2, H.g) and bfield_preserves(w2, j, 1, 1)
    for S in (H.S, H.s_of(Fraction(3, 5), Fraction(4, 5)), lift_two_form(theta_e(), 1)):
        S2 = bfield(w2, S)
        assert check_slash_complex(S2, j, 1, 1).ok
        assert bool(is_integrable_slash(S2, 1, False, H.g, j=j)) == bool(
            is_integrable_slash(S, 1, False, H.g, j=j))


# --------------------------------------------------------------- Heisenberg

def test_heisenberg_s_of_examples():
    assert H.s_of(1, 0) == H.S
    S = H.s_of(Fraction(3, 5), Fraction(4, 5))
    assert check_slash_complex(S, H.j, 1, 1).ok
    assert sig_complex_11(S, H.j).n == 2
    with pytest.raises(NotACirclePoint):
        H.s_of(1, 1)
    S01 = H.s_of(0, 1)
    assert is_zero(S01.A) and is_zero(S01.D)


@settings(max_examples=20, deadline=None)
@given(st.fractions(min_value=-5, max_value=5, max_denominator=7))
def test_s_of_matches_exp_tD(u):
    # rational parametrisation of the circle (cos t, sin t)
    c, s = (1 - u * u) / (1 + u * u), 2 * u / (1 + u * u)
    c2, s2 = c * c - s * s, 2 * s * c
    E, Einv = H.exp_tD(c, s), H.exp_tD(c, -s)
    assert equal(E @ Einv, eye(8))
    assert equal(E @ H.S.matrix @ Einv, H.s_of(c2, s2).matrix)


def test_obstruction_trivial_points():
    assert nontrivial_obstruction(H.s_of(1, 0), H.j, H.g).diagonal.found
    v = nontrivial_obstruction(H.s_of(0, 1), H.j, H.g)
    assert v.antidiagonal.found and not v.obstructed


def test_obstruction_rational_point_expected_obstructed():
    v = nontrivial_obstruction(H.s_of(Fraction(3, 5), Fraction(4, 5)), H.j, H.g)
    assert not v.diagonal.found
    assert v.obstructed, v.antidiagonal.reason


@settings(max_examples=15, deadline=None)
@given(st.fractions(min_value=-5, max_value=5, max_denominator=7))
def test_rational_points_decompose(u):
    # independent reconstruction: S = B Q B^-1 with closed data and a slash-structure Q
    c, s = (1 - u * u) / (1 + u * u), 2 * u / (1 + u * u)
    S = H.s_of(c, s)
    v = nontrivial_obstruction(S, H.j, H.g)
    if s == 0:
        assert v.diagonal.found
        return
    assert v.antidiagonal.found
    a, b = flat(v.antidiagonal.data["a"]), flat(v.antidiagonal.data["b"])
    Q = BlockEndo.from_blocks(zeros(4), inverse(a), a, zeros(4))
    B = BlockEndo.from_blocks(eye(4), zeros(4), b, eye(4))
    Binv = BlockEndo.from_blocks(eye(4), zeros(4), -b, eye(4))
    assert (B @ Q @ Binv) == S
    assert check_slash_complex(Q, H.j, 1, 1).ok
    assert d_closed_2form(unflat(a), H.g) and d_closed_2form(unflat(b), H.g)


# ---------------------------------------------------------- L-symplectic

def test_ell_symplectic_abelian():
    g = LieAlgebra.abelian(4)
    w = zeros(4)
    w[0, 1], w[1, 0], w[2, 3], w[3, 2] = 1, -1, 1, -1
    A = mat(np.diag([1, 1, -1, -1]).tolist())
    theta = unflat(flat(w) @ A)
    v = ell_symplectic_check(theta, w, g)
    assert v.ok and all(v.details.values())


def test_ell_symplectic_rejects_non_closed():
    v = ell_symplectic_check(theta_e(), heisenberg_pattern(1, 0, 0), heisenberg_times_r())
    assert not v.ok and v.clause == "precondition: theta closed"


def test_ell_symplectic_converse_abelian():
    g = LieAlgebra.abelian(4)
    w = zeros(4)
    w[0, 1], w[1, 0], w[2, 3], w[3, 2] = 1, -1, 1, -1
    v = ell_symplectic_from_foliations([unit(4, 0), unit(4, 1)], [unit(4, 2), unit(4, 3)], w, g)
    assert v.ok
    A = inverse(flat(w)) @ flat(v.theta)
    assert equal(mm(A, A), eye(4))


def test_ell_symplectic_converse_needs_orthogonality():
    g = LieAlgebra.abelian(4)
    w = zeros(4)
    w[0, 1], w[1, 0], w[2, 3], w[3, 2] = 1, -1, 1, -1
    plus = [unit(4, 0), unit(4, 1)]
    minus = [unit(4, 2), unit(4, 3) + unit(4, 0)]
    v = ell_symplectic_from_foliations(plus, minus, w, g)
    assert not v.ok and v.clause == "theta skew"
