"""Decision procedures for ring-theoretic properties of affine cellular algebras."""
from .cellular import (
    CellLayer, CellularAlgebraSpec, LayerElement, SwitchElement, asymptotic_algebra,
    asymptotic_map, det_phi, layer_multiply, phi_inverse, switch_multiply, validate_spec,
)
from .decide import (
    Answer, Verdict, check_artinian, check_jacobson_sufficient, check_semiprime_sufficient,
    check_semisimple, check_separable, full_report,
)
from .fields import GF, QQ, FieldSpec
from .groebner import (
    BudgetExceeded, GroebnerBasis, Ideal, buchberger, eliminate, ideal_intersection,
    ideal_quotient, normal_form,
)
from .parser import ParseError, parse_polynomial
from .polynomial import MonomialOrder, Polynomial, PolyRing, block, degrevlex, lex
from .quotient import (
    INFINITE, QuotientRing, dim_K, is_etale, is_radical, is_unit, is_zero_dimensional,
    is_zero_divisor, minimal_polynomial, multiplication_matrix,
)
from .specfile import format_spec, load_spec, parse_spec

__version__ = "0.1.0"

__all__ = [
    "CellLayer", "CellularAlgebraSpec", "LayerElement", "SwitchElement", "asymptotic_algebra",
    "asymptotic_map", "det_phi", "layer_multiply", "phi_inverse", "switch_multiply",
    "validate_spec", "Answer", "Verdict", "check_artinian", "check_jacobson_sufficient",
    "check_semiprime_sufficient", "check_semisimple", "check_separable", "full_report", "GF", "QQ",
    "FieldSpec", "BudgetExceeded", "GroebnerBasis", "Ideal", "buchberger", "eliminate",
    "ideal_intersection", "ideal_quotient", "normal_form", "ParseError", "parse_polynomial",
    "MonomialOrder", "Polynomial", "PolyRing", "block", "degrevlex", "lex", "INFINITE",
    "QuotientRing", "dim_K", "is_etale", "is_radical", "is_unit", "is_zero_dimensional",
    "is_zero_divisor", "minimal_polynomial", "multiplication_matrix", "format_spec", "load_spec",
    "parse_spec",
]
