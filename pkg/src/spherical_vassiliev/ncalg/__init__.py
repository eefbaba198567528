"""Truncated graded noncommutative algebra over the integers."""

from .pairs import PairAlgebra, SpherePair, dyadic_valuation, filtration_degree, pair_mul, perm_act
from .poly import NCPoly, Series, magnus_expand, nc_mul, substitute_generators
from .presentations import RelatorSet, ihara, kohno_4T, pm_reduced, relator_set, sphere_reduced
from .tables import (
    Algebra,
    CanonicalElement,
    ReductionTable,
    TableStore,
    build_reduction_table,
    graded_ranks,
    reduce_canonical,
    table_cache,
)

__all__ = [
    "Algebra", "CanonicalElement", "NCPoly", "PairAlgebra", "ReductionTable", "RelatorSet",
    "Series", "SpherePair", "TableStore", "build_reduction_table", "dyadic_valuation",
    "filtration_degree", "graded_ranks", "ihara", "kohno_4T", "magnus_expand", "nc_mul",
    "pair_mul", "perm_act", "pm_reduced", "reduce_canonical", "relator_set",
    "sphere_reduced", "substitute_generators", "table_cache",
]
