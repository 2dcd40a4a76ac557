"""Slash structures on V + V*: exact checks, signatures, integrability and orbits."""

from .errors import (
    DegenerateForm, DimensionMismatch, InvalidLabel, NotAComplexStructure, NotACirclePoint,
    NotASlashStructure, NotInAnyOrbit, NotInOrbit, ShapeMismatch, SlashError, ToleranceExceeded,
    UnsupportedOrbit,
)
from .scalars import (
    EPS, E_NULL, E_NULL_BAR, I, Fraction, GaussianRational, LorentzRational, RationalQuaternion,
    as_rational, lorentz_from_split, lorentz_split,
)
from .linalg import (
    FormSpec, congruence_diagonalize, congruence_signature, darboux_basis, mat, quaternionic_to_complex,
    standard_symplectic,
)
from .extended import (
    BlockEndo, ExtendedVector, b_adjoint, flat, make_I, make_J, pairing_b, sesqui_b_ell, sesqui_b_pm,
    sharp, standard_j, standard_omega,
)
from .slash import (
    SignatureResult, SlashReport, bfield, bfield_preserves, check_generalized, check_slash_complex,
    check_slash_symplectic, crainic_blocks, extract_interpolants, lift_tensor, lift_two_form,
    poisson_lift, sig_complex_11, sig_symplectic_m11, symplectic_slash_blocks,
)
from .lie import (
    LieAlgebra, courant_bracket_li, d_closed_2form, ell_symplectic_check,
    ell_symplectic_from_foliations, heisenberg_demo, heisenberg_times_r, is_integrable_slash,
    nontrivial_obstruction, theta_e,
)
from .orbits import (
    ConjugatorResult, OrbitLabel, all_labels, classify, conjugator, group_dimension,
    linearized_dimension, normal_form,
)

__version__ = "0.1.0"
