"""Exact Borel-Schur algebra toolkit.

Builds the Borel subalgebra of the Schur algebra from the divided-power
enveloping algebra of strictly upper-triangular matrices, checks the
construction against the classical tensor-space realization, and
transports minimal graded projective resolutions of the trivial module
into minimal projective resolutions of the one-dimensional simples.
"""

from .arrows import (
    BorelAlgebra,
    ConvexTruncation,
    arrow_is_kept,
    arrow_product,
    reduce_to_compositions,
)
from .divided_powers import DividedPowerAlgebra, IntegralityError, Monomial
from .fields import PrimeField, Rationals, field_of_characteristic
from .idempotents import (
    chain_report,
    quotient_algebra,
    tor_dimensions,
    two_idempotent_report,
)
from .resolutions import GradedComplex, minimal_resolution
from .tensor_space import TensorAction, upper_table_json, verify_isomorphism
from .transport import (
    ModuleComplex,
    ext_table_csv,
    resolve_simple,
    transport_resolution,
)

__all__ = [
    "BorelAlgebra",
    "ConvexTruncation",
    "DividedPowerAlgebra",
    "GradedComplex",
    "IntegralityError",
    "ModuleComplex",
    "Monomial",
    "PrimeField",
    "Rationals",
    "TensorAction",
    "arrow_is_kept",
    "arrow_product",
    "chain_report",
    "ext_table_csv",
    "field_of_characteristic",
    "minimal_resolution",
    "quotient_algebra",
    "reduce_to_compositions",
    "resolve_simple",
    "tor_dimensions",
    "transport_resolution",
    "two_idempotent_report",
    "upper_table_json",
    "verify_isomorphism",
]
