"""Explicit Kummer-surface arithmetic for genus-2 Jacobians over fields of
any characteristic, with a per-curve formula-synthesis engine validated
against an independent Mumford/Cantor group-law oracle."""

from .field import (
    BinaryField,
    FieldElement,
    PrimeField,
    RationalField,
    arith,
    field_from_spec,
    quad_solve,
    random_element,
)
from .algebra import BIQUADRATIC44, Matrix, MonomialBasis, Poly, QUARTIC4, eval_form, poly_ops, roots, solve_kernel
from .curve import (
    CurveModel,
    CurvePoint,
    ModelIsomorphism,
    PairDivisor,
    char2_normal_form,
    curve_from_text,
    involution,
    normal_form_curve,
    rational_weierstrass_points,
    sample_point,
    simplified_kummer_matrix,
    simplified_model,
    transform,
    transform_mumford,
    transform_pair,
    transform_point,
    validate,
)
from .jacobian import (
    MumfordDivisor,
    WorkingModel,
    add,
    enumerate_divisors,
    from_point_pair,
    negate,
    random_divisor,
    scalar_mul,
    to_point_pair,
    working_model,
)
from .kummer import (
    KummerPoint,
    KummerQuartic,
    TwoTorsionData,
    kummer_coords,
    on_surface,
    quartic_from_curve,
    translate_by_two_torsion,
    two_torsion_classes,
    w_matrix_char2,
    zero_class_point,
)
from .synthesis import (
    FormulaSet,
    crosscheck_b_conversion,
    crosscheck_tau_delta,
    descend_coefficients,
    deserialize_formula_set,
    fingerprint,
    serialize_formula_set,
    synthesize_bqf,
    synthesize_delta,
    synthesize_formula_set,
    synthesize_w_oddchar,
)
from .ladder import LadderContext, bench, ladder, make_context, xadd, xdbl
from .verify import (
    LemmaReport,
    lemma_b_search,
    lemma_delta_search,
    proposition_suites,
    two_torsion_count_check,
)

__version__ = "0.1.0"
