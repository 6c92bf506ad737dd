"""Exact certificates for infinite cokernels of additive polynomials over
rational-function towers, plus essential-dimension bound reports."""

from .addpoly import AdditivePoly, PrincipalPart, Term, one_variable
from .cokernel import (
    CokernelCertificate,
    DKDecomposition,
    ImageTable,
    OracleResult,
    TTReport,
    c0_constant,
    certify_infinite_cokernel,
    dk_decompose,
    oracle_image_contains,
    tt_valuation_identity_check,
)
from .edim import (
    EdBoundReport,
    FieldContext,
    PGroupProfile,
    UnipotentProfile,
    bound,
    central_extension_bound,
    h1_infinite,
    specialness_witness_degree,
    weil_restrict_profile,
)
from .errors import ToolkitError
from .fields import Tower, TowerElement
from .parsing import parse_element
from .pgroup import (
    FiniteGroup,
    FrattiniData,
    elementary_bound,
    frattini,
    jly_bound,
    ledet_bound,
    pgl2_lower_bound,
)
from .valgroup import (
    INFINITY,
    ResidueClass,
    ValGroupElement,
    ValueGroup,
    compare,
    missing_residues,
)
from .valuation import (
    ValuationBasis,
    eliminate_to_valuation_basis,
    index_equality,
    is_valuation_independent,
    product_construction_basis,
    standard_basis,
    val,
    valuation_axioms_check,
    value_group,
)

__all__ = [
    "AdditivePoly",
    "CokernelCertificate",
    "DKDecomposition",
    "EdBoundReport",
    "FieldContext",
    "FiniteGroup",
    "FrattiniData",
    "INFINITY",
    "ImageTable",
    "OracleResult",
    "PGroupProfile",
    "PrincipalPart",
    "ResidueClass",
    "TTReport",
    "Term",
    "ToolkitError",
    "Tower",
    "TowerElement",
    "UnipotentProfile",
    "ValGroupElement",
    "ValuationBasis",
    "ValueGroup",
    "bound",
    "c0_constant",
    "central_extension_bound",
    "certify_infinite_cokernel",
    "compare",
    "dk_decompose",
    "elementary_bound",
    "eliminate_to_valuation_basis",
    "frattini",
    "h1_infinite",
    "index_equality",
    "is_valuation_independent",
    "jly_bound",
    "ledet_bound",
    "missing_residues",
    "one_variable",
    "oracle_image_contains",
    "parse_element",
    "pgl2_lower_bound",
    "product_construction_basis",
    "specialness_witness_degree",
    "standard_basis",
    "tt_valuation_identity_check",
    "val",
    "valuation_axioms_check",
    "value_group",
    "weil_restrict_profile",
]

__version__ = "0.1.0"
