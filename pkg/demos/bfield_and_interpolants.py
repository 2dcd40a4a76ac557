"""
B-fields and interpolants
=========================

A closed two-form whose symmetry matches J_ell moves a slash structure to
another one with the same invariant; the wrong symmetry breaks the
anticommutation.  Diagonal and anti-diagonal members then give back the
tensor r and the two-form theta they interpolate between.
"""

import numpy as np

from slashgeom import heisenberg_demo, check_slash_complex, sig_complex_11
from slashgeom.lie import d_two_form, heisenberg_pattern
from slashgeom.linalg import kernel_basis, columns, zeros
from slashgeom.slash import bfield, bfield_preserves, extract_interpolants, lift_two_form

demo = heisenberg_demo()
j, g = demo.j, demo.g


def skew_forms(*constraints):
    """Skew 4x4 forms X with every constraint(X) = 0."""
    gens = []
    for a in range(4):
        for b in range(a + 1, 4):
            X = zeros(4)
            X[a, b], X[b, a] = 1, -1
            gens.append(X)
    A = columns([np.concatenate([np.asarray(c(X), dtype=object).reshape(-1) for c in constraints])
                 for X in gens])
    return [sum((c * X for c, X in zip(k, gens)), zeros(4)) for k in kernel_basis(A)]


closed = lambda X: np.array(list(d_two_form(X, g).values()), dtype=object)
good = skew_forms(closed, lambda X: X @ j - j.T @ X)[0]
bad = skew_forms(closed, lambda X: X @ j + j.T @ X)[0]

for name, w in (("matching", good), ("wrong", bad)):
    T = bfield(w, demo.s_of(0, 1))
    rep = check_slash_complex(T, j, 1, 1)
    print(f"{name:8s} preserves={bfield_preserves(w, j, 1, 1)!s:5s} member={rep.ok!s:5s}",
          f"sig={sig_complex_11(T, j).n}" if rep.ok else f"fails: {rep.failed_clause}")

# interpolants: r from the diagonal lift, theta from a symplectic form of the pattern family
Q = lift_two_form(heisenberg_pattern(0, 1, 0), 1)
r, theta, verdicts = extract_interpolants(demo.S, Q, j, 1, 1, lie=g)
print("\ntheta =\n", theta)
for k, v in verdicts.items():
    print(f"  {k:22s} {v}")
