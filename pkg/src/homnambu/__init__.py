"""Exact construction and verification of n-ary Hom-Nambu-Lie algebras."""

from .construct import (
    InductionRecord,
    PreconditionError,
    commutator_defect,
    double_induce,
    induce_algebra,
    reduce_algebra,
    twist_downup,
    twist_updown,
    wedge_construct,
)
from .identities import (
    check_abelian,
    check_fundamental_identity,
    check_gji,
    check_hom_nambu_jacobi,
    check_phi_trace,
    check_pform_compatible,
    check_skew,
    check_wedge_hypothesis,
)
from .multilinear import (
    HomNambuAlgebra,
    PForm,
    SkewMap,
    det_pform,
    fix_args_pi,
    induce_phi_tau,
    interior,
    wedge,
)
from .report import CheckReport, Violation
from .scalar import ParameterContext, Poly, format_scalar, parse_scalar
from .space import (
    IncompatibleTuple,
    LinearMap,
    Space,
    TraceFunctional,
    TupleClass,
    check_compatibility,
    classify_tuple,
    proportionality,
)

__version__ = "0.1.0"

__all__ = [
    "CheckReport",
    "HomNambuAlgebra",
    "IncompatibleTuple",
    "InductionRecord",
    "LinearMap",
    "PForm",
    "ParameterContext",
    "Poly",
    "PreconditionError",
    "SkewMap",
    "Space",
    "TraceFunctional",
    "TupleClass",
    "Violation",
    "check_abelian",
    "check_compatibility",
    "check_fundamental_identity",
    "check_gji",
    "check_hom_nambu_jacobi",
    "check_pform_compatible",
    "check_phi_trace",
    "check_skew",
    "check_wedge_hypothesis",
    "classify_tuple",
    "commutator_defect",
    "det_pform",
    "double_induce",
    "fix_args_pi",
    "format_scalar",
    "induce_algebra",
    "induce_phi_tau",
    "parse_scalar",
    "interior",
    "proportionality",
    "reduce_algebra",
    "twist_downup",
    "twist_updown",
    "wedge",
    "wedge_construct",
]
