"""
Heisenberg x R, step by step
============================

The built-in data: h_3 x R with [e1, e2] = e3, a complex structure j, a
paracomplex r anticommuting with j, and the diagonal lift S = diag(r, -r^T)
on g + g*.  Everything below is exact rational arithmetic.
"""

from fractions import Fraction

from slashgeom import heisenberg_demo, check_slash_complex, sig_complex_11
from slashgeom.lie import is_integrable_slash, nontrivial_obstruction

demo = heisenberg_demo()
print(demo.g, "\n")

# algebraic conditions for a (1,1)-structure, then the invariant n
rep = check_slash_complex(demo.S, demo.j, 1, 1)
print("check:", rep.ok, " sig:", sig_complex_11(demo.S, demo.j).n)

# Courant integrability: both +-1 eigenbundles have to close
print("integrable:", is_integrable_slash(demo.S, 1, False, demo.g, j=demo.j).spaces, "\n")

# the one-parameter family, sampled at rational points (cos 2t, sin 2t)
for c2, s2 in [(1, 0), (Fraction(3, 5), Fraction(4, 5)), (Fraction(5, 13), Fraction(12, 13)), (0, 1)]:
    S = demo.s_of(c2, s2)
    ok = check_slash_complex(S, demo.j, 1, 1).ok
    integ = bool(is_integrable_slash(S, 1, False, demo.g, j=demo.j))
    v = nontrivial_obstruction(S, demo.j, demo.g)
    print(f"({c2}, {s2}): member={ok} integrable={integ} -> {v.label}")
    for d in (v.diagonal, v.antidiagonal):
        print(f"    {d.kind:12s} {d.found!s:5s} {d.reason}")

# Off the axes the anti-diagonal decomposition goes through: S(t) = B Q B^-1
# with both two-forms closed.  The data is printed so it can be checked by hand.
v = nontrivial_obstruction(demo.s_of(Fraction(3, 5), Fraction(4, 5)), demo.j, demo.g)
print("\na =\n", v.antidiagonal.data["a"], "\nb =\n", v.antidiagonal.data["b"])
