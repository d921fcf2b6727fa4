"""Exact symbolic exterior calculus for polynomial differential forms.

Sparse rational polynomial arithmetic, the exterior algebra of polynomial
forms and vector fields, decomposability/integrability certificates,
degree-bounded division solvers, order-by-order decomposition of
square-zero families, homogeneous small-degree classification, and
singular-locus certificates, with a text grammar and CLI front end.
"""

from .ratpoly import ANY_DEGREE, Poly, Rational, content_gcd, exact_div, gcd
from .forms import PForm, PolyMap, VField, radial, volume_form
from .foliate import (
    DecompositionWitness,
    IntersectionResult,
    MeroForm,
    complete_intersection,
    frobenius_integrable1,
    frobenius_integrable_q,
    invariant_hyperplane,
    is_decomposable2,
    is_dicritical,
    is_integrable2,
    is_integrable2_c4,
    kupka_point,
    lifted_vector_form,
    logarithmic_form,
    mero_decompose,
    rotational4,
    verify_first_integrals,
)
from .divide import (
    CofoliationSearch,
    GradedLinearSystem,
    containing_foliation_search,
    derham_vector_solve,
    integrating_factor_search,
    saito_solve,
)
from .deform import (
    FamilyDecomposition,
    FormFamily,
    family_decompose,
    family_square_zero_check,
    pairing_involution,
    quadruple_set,
)
from .homog import (
    ClassificationReport,
    classify,
    diagonal_action_data,
    dicritical_primitive,
    linearize_nonresonant,
    nilpotent_action_data,
    perturbation_integrability,
    radial_contraction,
    reduces_to_variables,
    rotational_pair_analysis,
    verify_component,
)
from .singloc import (
    SingCertificate,
    codim1_content,
    enumerate_line_certificates,
    line_in_sing_check,
    projective_point_scan,
    quadric_map,
    sing_line_search,
    singular_ideal,
)
from .formexpr import ParseError, form_to_str, parse_form, parse_poly, parse_vfield, poly_to_str

__all__ = [name for name in dir() if not name.startswith("_")]
