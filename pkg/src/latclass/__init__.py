"""Exact arithmetic for full lattices and orders in finite dimensional
commutative Q-algebras, with classification of GL_n(Z)-conjugacy classes of
regular integer matrices through the lattice correspondence."""

from .algebra import (Algebra, MultMetric, canonical_metric, cyclic_algebra,
                      decompose, flat3_algebra, mixed_algebra, split_algebra)
from .errors import (DomainError, LatClassError, RankError, ResourceError,
                     UnsupportedError)
from .lattice import FullLattice, dedekind_chain, index, span

__all__ = [
    "Algebra", "MultMetric", "canonical_metric", "cyclic_algebra", "decompose",
    "flat3_algebra", "mixed_algebra", "split_algebra", "FullLattice",
    "dedekind_chain", "index", "span", "LatClassError", "DomainError",
    "RankError", "UnsupportedError", "ResourceError",
]
