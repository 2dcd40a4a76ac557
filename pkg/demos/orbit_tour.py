"""
A tour of the orbit tables
==========================

For each row: the normal form, three independent dimension counts, and a
round trip through a random group conjugate.
"""

import random

from slashgeom.orbits import (
    all_labels, backend_for, classify, conjugator, group_dimension, linearized_dimension,
    normal_form, orbit_tangent_dimension, random_group_element,
)
from slashgeom.linalg import inverse, mm

rng = random.Random(7)

print(f"{'label':28s} {'G/H':>4s} {'lin':>4s} {'tan':>4s}  backend   residual")
for label in all_labels(2):
    nf = normal_form(label)
    dims = (group_dimension(label), linearized_dimension(nf.S, label),
            orbit_tangent_dimension(nf.S, label))

    g = random_group_element(label, rng=rng)
    T = mm(mm(g, nf.S.matrix), inverse(g))
    assert classify(T, nf.structure, label.side, ell=label.ell) == label

    if backend_for(label):
        res = conjugator(T, label)
        tail = f"{res.backend:9s} {max(res.residuals.values()):.1e}"
    else:
        tail = "(quaternionic, membership only)"
    print(f"{str(label):28s} {dims[0]:4d} {dims[1]:4d} {dims[2]:4d}  {tail}")
