"""Exact computations with Dedekind eta quotients on Gamma_0(N).

Orders at cusps and holomorphy, holomorphy-preserving exponent maps,
q-expansions over cyclotomic integers, and exhaustive enumeration of
holomorphic quotients of a given weight and level.
"""

from .arith import CyclotomicInt, divisors, factor, index_mu, totient
from .enumerate import (
    ClassifiedQuotient,
    EnumerationCapError,
    classify,
    enumerate_holomorphic,
    factorizations,
    is_quasi_irreducible,
    is_simple,
    verify_zagier,
)
from .etaq import (
    ZAGIER_LIST,
    EtaQuotient,
    EtaSyntaxError,
    fmt,
    is_primitive,
    level,
    parse,
    primitive_part,
    rescale,
    star_product,
    weight2,
    zagier_match,
)
from .orders import (
    cusp_classes,
    cusp_normalize,
    cusp_values,
    is_holomorphic,
    order_map,
    sym_order_matrix,
    sym_order_matrix_inverse,
    valence_check,
)
from .phimap import ConsistencyError, WeightsError, apply_phi, corollary2_weights, validate_weights
from .series import (
    PuiseuxSeries,
    eta_series,
    involution_pairing,
    jtp_cell,
    quotient_series,
    sign_transform,
    theta_extract,
)

__version__ = "0.1.0"
