"""Exact module-category computations for representation-finite algebras.

The package builds complete catalogs of indecomposable representations
of bound quiver algebras over a prime field, forms the endomorphism
algebra of their additive generator together with its stable quotient,
and implements the functor calculus (morphism-category functors, the
idempotent recollement, intermediate extensions, tilting comparisons and
quasi-hereditary structures) needed to check the associated structure
theorems mechanically at desk scale.
"""

from ausrep.linalg import DEFAULT_PRIME

__all__ = ["DEFAULT_PRIME"]
__version__ = "0.1.0"
