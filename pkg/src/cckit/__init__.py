"""Exact calculus for almost-cosymplectic-contact structures.

A (2n+1)-dimensional coordinate chart carries a 1-form omega and a
2-form Omega; when omega ^ Omega^n is generically nonzero the pair has a
unique dual (E, Lambda) and the whole symmetry calculus of such
structures becomes exact linear algebra over rational functions.  This
package provides that calculus: classification, the duality solver, the
Schouten bracket, the Lie bracket on generator pairs, symmetry
certification, and a randomized zero-tolerance identity suite.
"""

from .algebra import (
    Chart,
    ParseError,
    Poly,
    Scalar,
    format_poly,
    format_scalar,
    parse_scalar,
)
from .catalog import CatalogEntry, example_names, get_example
from .exterior import (
    DiffForm,
    Multivector,
    exterior_derivative,
    interior_product,
    lie_derivative_form,
    lie_derivative_scalar,
    pairing,
    schouten_bracket,
    wedge,
)
from .report import CheckEntry, ConditionReport
from .structures import (
    ContravariantPair,
    CovariantPair,
    DualityError,
    NotRegular,
    StructureClass,
    StructureError,
    classify,
    decompose_form,
    decompose_vector,
    dualize,
    flat,
    is_almost_cosymplectic_contact,
    lambda_pair,
    project,
    regularity_density,
    second_pair,
    sharp,
    verify_contravariant_identities,
    verify_duality,
)
from .symmetries import (
    BracketMode,
    GeneratorPair,
    HamiltonJacobiLift,
    PreconditionError,
    SymmetryTarget,
    antisymmetrization_identity,
    check_generator_conditions,
    check_symmetry_direct,
    closure_check_Omega,
    derivation_check_D,
    derivation_check_LX,
    find_generator_pairs,
    hamilton_jacobi_lift,
    leibniz_correction_report,
    leibniz_defect,
    leibniz_rule_report,
    lie_derivative_pair,
    musical_commutation_check,
    musical_commutation_iff_report,
    pair_bracket,
    pair_to_vector,
    pairs_equivalent,
    poisson_bracket,
    reduced_bracket,
    theorem_equivalence_check,
    zero_pair,
)

__version__ = "0.1.0"

__all__ = [
    "BracketMode",
    "CatalogEntry",
    "Chart",
    "CheckEntry",
    "ConditionReport",
    "ContravariantPair",
    "CovariantPair",
    "DiffForm",
    "DualityError",
    "GeneratorPair",
    "HamiltonJacobiLift",
    "Multivector",
    "NotRegular",
    "ParseError",
    "Poly",
    "PreconditionError",
    "Scalar",
    "StructureClass",
    "StructureError",
    "SymmetryTarget",
    "antisymmetrization_identity",
    "check_generator_conditions",
    "check_symmetry_direct",
    "classify",
    "closure_check_Omega",
    "decompose_form",
    "decompose_vector",
    "derivation_check_D",
    "derivation_check_LX",
    "dualize",
    "example_names",
    "exterior_derivative",
    "find_generator_pairs",
    "flat",
    "format_poly",
    "format_scalar",
    "get_example",
    "hamilton_jacobi_lift",
    "interior_product",
    "is_almost_cosymplectic_contact",
    "lambda_pair",
    "leibniz_correction_report",
    "leibniz_defect",
    "leibniz_rule_report",
    "lie_derivative_form",
    "lie_derivative_pair",
    "lie_derivative_scalar",
    "musical_commutation_check",
    "musical_commutation_iff_report",
    "pair_bracket",
    "pair_to_vector",
    "pairing",
    "pairs_equivalent",
    "parse_scalar",
    "poisson_bracket",
    "project",
    "reduced_bracket",
    "regularity_density",
    "schouten_bracket",
    "second_pair",
    "sharp",
    "theorem_equivalence_check",
    "verify_contravariant_identities",
    "verify_duality",
    "wedge",
    "zero_pair",
]
