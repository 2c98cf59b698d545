"""Exact verification of classical q-continued-fraction identities.

Truncated power series over exact rationals, continued fractions with
polynomial partial quotients, Euler's series-to-fraction expansion, and a
catalog of Rogers-Ramanujan-type identities checked coefficient by
coefficient with zero tolerance.
"""

from .catalog import (
    IdentityEntry,
    IdentityReport,
    check_reduction,
    entry_ids,
    failure_table,
    lookup,
    perturbed_entry,
    register_all,
    reports_from_json,
    reports_to_json,
    verify,
    verify_all,
)
from .cfrac import (
    CFrac,
    Convergents,
    NumericCF,
    approximant,
    equivalence_unit_denominators,
    modified_approximant,
    numeric_cf,
    numeric_value,
    render_cfrac,
    tail,
    worpitzky_index,
)
from .errors import (
    FormallyDivergentProduct,
    HorizonExceeded,
    NonUnitDenominator,
    NonUnitInput,
    NonUnitSeries,
    NumericBlowup,
    PoleAtParameter,
    PrecisionExhausted,
    QcfracError,
    UnknownIdentity,
    UnsupportedShift,
)
from .euler import (
    ExpansionTrace,
    euclid_cf,
    euclid_value,
    euler_expand,
    euler_step,
    verify_three_term,
)
from .families import (
    DEFAULT_POINT,
    Family,
    ParamPoint,
    big_g_sum,
    build_family,
    c_sum,
    eisenstein_sum,
    g1_sum,
    g1ab_sum,
    g2_big_sum,
    g2_sum,
    g_sum,
    gfrac5_den_sum,
    limit_pochhammer_scaled,
    pochhammer_finite,
    pochhammer_infinite,
    rr_sum,
    sample_params,
)
from .rationals import backend_name, format_rational, parse_rational, rational
from .series import QMonomial, QSeries, geometric_inverse

__version__ = "0.1.0"

__all__ = [
    "CFrac",
    "Convergents",
    "DEFAULT_POINT",
    "ExpansionTrace",
    "Family",
    "FormallyDivergentProduct",
    "HorizonExceeded",
    "IdentityEntry",
    "IdentityReport",
    "NonUnitDenominator",
    "NonUnitInput",
    "NonUnitSeries",
    "NumericBlowup",
    "NumericCF",
    "ParamPoint",
    "PoleAtParameter",
    "PrecisionExhausted",
    "QMonomial",
    "QSeries",
    "QcfracError",
    "UnknownIdentity",
    "UnsupportedShift",
    "approximant",
    "backend_name",
    "big_g_sum",
    "build_family",
    "c_sum",
    "check_reduction",
    "eisenstein_sum",
    "entry_ids",
    "equivalence_unit_denominators",
    "euclid_cf",
    "euclid_value",
    "euler_expand",
    "euler_step",
    "failure_table",
    "format_rational",
    "g1_sum",
    "g1ab_sum",
    "g2_big_sum",
    "g2_sum",
    "g_sum",
    "geometric_inverse",
    "gfrac5_den_sum",
    "limit_pochhammer_scaled",
    "lookup",
    "modified_approximant",
    "numeric_cf",
    "numeric_value",
    "parse_rational",
    "perturbed_entry",
    "pochhammer_finite",
    "pochhammer_infinite",
    "register_all",
    "render_cfrac",
    "reports_from_json",
    "reports_to_json",
    "rr_sum",
    "rational",
    "sample_params",
    "tail",
    "verify",
    "verify_all",
    "verify_three_term",
    "worpitzky_index",
]
