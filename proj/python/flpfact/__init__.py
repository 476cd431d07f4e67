"""FLP factorization of multivariate polynomial matrices."""

from ._flpfact import (
    FlpError,
    column_reduced_minors,
    d_r,
    factorize,
    flp_factorize,
    gcd,
    irreducible_factors,
    rank,
    verify,
)

__all__ = [
    "FlpError",
    "column_reduced_minors",
    "d_r",
    "factorize",
    "flp_factorize",
    "gcd",
    "irreducible_factors",
    "rank",
    "verify",
]
