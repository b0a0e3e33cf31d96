"""Exact toolkit and bounded certifier for autonomous polynomial vector fields.

Submodules
----------
polyring      exact rationals, sparse polynomials, rational functions, parser
linalg        rational matrices, characteristic polynomials, certified roots
groebner      Buchberger bases, normal forms, elimination, rational solutions
vectorfield   derivations, Lie brackets, jet sequences and scalar ODEs
prolongation  cotangent prolongation and horizontal invariant cones
projective    homogenization, charts and Euler quotients on projective space
singularity   singular points, linear parts and resonance certification
darboux       Darboux polynomials and codimension-one invariant distributions
certifier     bounded-evidence certificates and structural reports
"""

from .certifier import Certificate, certify, structure_report
from .darboux import (
    DarbouxPair,
    OneForm,
    SearchReport,
    codim1_invariant,
    cofactor_of,
    darboux_search,
    invariant_ideal_check,
    tangency_identity_check,
)
from .groebner import (
    GroebnerBudgetExceeded,
    Ideal,
    MonomialOrder,
    buchberger,
    eliminate,
    normal_form,
    rational_points,
)
from .linalg import QMatrix, RootEnclosure, char_poly, isolate_roots, refine
from .polyring import ParseError, Poly, RatFunc, exact_divide, gcd, parse_expression, parse_poly
from .projective import (
    HomogeneousField,
    chart_derivation,
    dehomogenize,
    euler_field,
    homogenize_affine,
    hyperplane_invariant,
    modulo_euler_equal,
    pole_order,
)
from .prolongation import (
    HorizontalIdeal,
    bott_restriction_check,
    canonical_hypersurface,
    check_horizontal_invariant,
    distribution_conormal_ideal,
    first_prolongation,
    tautological_form,
)
from .singularity import (
    NotSingular,
    ResonanceVerdict,
    SingularPoint,
    linear_part,
    resonance_check,
    sing_locus_finite,
    singular_ideal,
    verify_singular,
)
from .vectorfield import (
    VectorField,
    affine_degree,
    apply_derivation,
    extract_ode,
    jet_sequence,
    lie_bracket,
    variational_matrix,
)

__version__ = "0.1.0"

__all__ = [
    "Certificate",
    "DarbouxPair",
    "GroebnerBudgetExceeded",
    "HomogeneousField",
    "HorizontalIdeal",
    "Ideal",
    "MonomialOrder",
    "NotSingular",
    "OneForm",
    "ParseError",
    "Poly",
    "QMatrix",
    "RatFunc",
    "ResonanceVerdict",
    "RootEnclosure",
    "SearchReport",
    "SingularPoint",
    "VectorField",
    "affine_degree",
    "apply_derivation",
    "bott_restriction_check",
    "buchberger",
    "canonical_hypersurface",
    "certify",
    "char_poly",
    "chart_derivation",
    "check_horizontal_invariant",
    "codim1_invariant",
    "cofactor_of",
    "darboux_search",
    "dehomogenize",
    "distribution_conormal_ideal",
    "eliminate",
    "euler_field",
    "exact_divide",
    "extract_ode",
    "first_prolongation",
    "gcd",
    "homogenize_affine",
    "hyperplane_invariant",
    "invariant_ideal_check",
    "isolate_roots",
    "jet_sequence",
    "lie_bracket",
    "linear_part",
    "modulo_euler_equal",
    "normal_form",
    "parse_expression",
    "parse_poly",
    "pole_order",
    "rational_points",
    "refine",
    "resonance_check",
    "sing_locus_finite",
    "singular_ideal",
    "structure_report",
    "tangency_identity_check",
    "tautological_form",
    "variational_matrix",
    "verify_singular",
]
