"""Linear-convergence classics: arctangent formulas, products, continued
fractions, binomial sums, zeta-style series, and the prime product."""

from .machin import (
    MACHIN_FORMULAS,
    MachinFormula,
    ValidationResult,
    arctan_recip,
    machin_eval,
    machin_validate,
)
from .catalog import CATALOG, CatalogEntry, EvalResult, catalog_eval, catalog_listing
from .eulersum import (
    euler_sum_linear,
    euler_sum_squared,
    zeta_even,
)

__all__ = [
    "MACHIN_FORMULAS",
    "MachinFormula",
    "ValidationResult",
    "arctan_recip",
    "machin_eval",
    "machin_validate",
    "CATALOG",
    "CatalogEntry",
    "EvalResult",
    "catalog_eval",
    "catalog_listing",
    "euler_sum_linear",
    "euler_sum_squared",
    "zeta_even",
]
