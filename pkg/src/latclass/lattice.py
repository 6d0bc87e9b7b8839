"""Full lattices in a commutative Q-algebra and their semigroup operations.

A lattice is stored by a unique canonical basis: scale by the minimal d > 0
making the basis integral, take the column Hermite normal form, divide back.
Equality of lattices is equality of canonical bases.
"""

from __future__ import annotations

from fractions import Fraction
from math import lcm

from . import exactnum as xn
from .algebra import Algebra, MultMetric, canonical_metric
from .errors import DomainError, RankError


class FullLattice:
    """Rank-n Z-lattice spanning the algebra over Q, in canonical form."""

    __slots__ = ("algebra", "basis", "_order", "_is_order", "_hash")

    def __init__(self, algebra: Algebra, generators):
        gens = [tuple(Fraction(x) for x in g) for g in generators]
        if not gens or any(len(g) != algebra.dim for g in gens):
            raise DomainError("generators must be coefficient vectors of full length")
        d = 1
        for g in gens:
            for x in g:
                d = lcm(d, x.denominator)
        int_cols = [[int(x * d) for x in g] for g in gens]
        rows = tuple(tuple(col[i] for col in int_cols) for i in range(algebra.dim))
        h = xn.hnf(rows)
        self.algebra = algebra
        self.basis = tuple(tuple(Fraction(x, d) for x in row) for row in h)
        self._order = None
        self._is_order = None
        self._hash = None

    @classmethod
    def from_basis_matrix(cls, algebra, matrix) -> "FullLattice":
        return cls(algebra, xn.columns(matrix))

    def generators(self) -> list[tuple]:
        return xn.columns(self.basis)

    # -- identity -------------------------------------------------------------
    def __eq__(self, other):
        return (isinstance(other, FullLattice) and self.algebra is other.algebra
                and self.basis == other.basis)

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((id(self.algebra), self.basis))
        return self._hash

    def __repr__(self):
        return f"FullLattice({self.basis})"

    def _same_algebra(self, other):
        if self.algebra is not other.algebra:
            raise DomainError("lattices live in different algebras")

    # -- membership and containment -------------------------------------------
    def coords(self, x) -> tuple:
        return xn.rmat_solve(self.basis, tuple(Fraction(c) for c in x))

    def contains(self, x) -> bool:
        return all(c.denominator == 1 for c in self.coords(x))

    def __contains__(self, x):
        return self.contains(x)

    def contains_lattice(self, other) -> bool:
        self._same_algebra(other)
        inv = xn.rmat_inv(self.basis)
        return xn.mat_is_integral(xn.mat_mul(inv, other.basis))

    # -- scaling ---------------------------------------------------------------
    def scale(self, factor) -> "FullLattice":
        """Multiply by a nonzero rational or an invertible algebra element."""
        if isinstance(factor, (int, Fraction)):
            if factor == 0:
                raise DomainError("cannot scale a lattice by zero")
            return FullLattice(self.algebra,
                               [tuple(Fraction(factor) * c for c in g)
                                for g in self.generators()])
        m = self.algebra.mult_matrix(factor)
        if xn.det(m) == 0:
            raise DomainError("scaling element is not invertible")
        return FullLattice(self.algebra, xn.columns(xn.mat_mul(m, self.basis)))

    # -- semigroup operations ----------------------------------------------------
    def __add__(self, other) -> "FullLattice":
        self._same_algebra(other)
        return FullLattice(self.algebra, self.generators() + other.generators())

    def intersect(self, other) -> "FullLattice":
        # (L1 cap L2) = dual(dual L1 + dual L2) under the standard inner product
        self._same_algebra(other)
        d1 = _std_dual(self)
        d2 = _std_dual(other)
        return _std_dual(d1 + d2)

    def __and__(self, other) -> "FullLattice":
        return self.intersect(other)

    def __mul__(self, other):
        if isinstance(other, FullLattice):
            self._same_algebra(other)
            gens = [self.algebra.mul(a, b)
                    for a in self.generators() for b in other.generators()]
            return FullLattice(self.algebra, gens)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def power(self, k: int) -> "FullLattice":
        if k < 1:
            raise DomainError("power: exponent must be >= 1")
        out = self
        for _ in range(k - 1):
            out = out * self
        return out

    def __pow__(self, k: int) -> "FullLattice":
        return self.power(k)

    # -- colon quotients ----------------------------------------------------------
    def colon(self, other) -> "FullLattice":
        """{a in A | a*other subset of self}; metric route with SNF fallback."""
        self._same_algebra(other)
        if self.algebra.family == "cyclic":
            phi = canonical_metric(self.algebra)
            return self.colon_dual(other, phi)
        return self.colon_stacked(other)

    def colon_stacked(self, other) -> "FullLattice":
        """Colon quotient via stacked integrality conditions and SNF."""
        self._same_algebra(other)
        n = self.algebra.dim
        binv = xn.rmat_inv(self.basis)
        rows = []
        for g in other.generators():
            block = xn.mat_mul(binv, self.algebra.mult_matrix(g))
            rows.extend(block)
        d = xn.denominator_lcm(rows)
        dmat = [[int(Fraction(x) * d) for x in row] for row in rows]
        _, s, v = xn.snf(dmat)
        cols = []
        for i in range(n):
            si = s[i][i]
            if si == 0:  # pragma: no cover - colon lattices are full
                raise RankError("colon: integrality system is rank deficient")
            cols.append(tuple(Fraction(v[r][i] * d, si) for r in range(n)))
        return FullLattice(self.algebra, cols)

    def colon_dual(self, other, phi: MultMetric) -> "FullLattice":
        """Colon quotient via the duality identity (self^phi * other)^phi."""
        self._same_algebra(other)
        return (self.dual(phi) * other).dual(phi)

    # -- duality ---------------------------------------------------------------
    def dual(self, phi: MultMetric | None = None) -> "FullLattice":
        """Dual lattice under a multiplicative metric (canonical by default)."""
        if phi is None:
            phi = canonical_metric(self.algebra)
        if phi.algebra is not self.algebra:
            raise DomainError("metric belongs to a different algebra")
        if xn.det(phi.gram) == 0:
            raise DomainError("metric is degenerate")
        m = xn.mat_mul(xn.transpose(self.basis), phi.gram)
        return FullLattice.from_basis_matrix(self.algebra, xn.rmat_inv(m))

    # -- orders -----------------------------------------------------------------
    def is_order(self) -> bool:
        if self._is_order is None:
            ok = self.contains(self.algebra.unit)
            if ok:
                gens = self.generators()
                ok = all(self.contains(self.algebra.mul(a, b))
                         for a in gens for b in gens)
            self._is_order = ok
        return self._is_order

    def order(self) -> "FullLattice":
        """The order of this lattice, O(L) = L : L."""
        if self._order is None:
            o = self.colon(self)
            if not o.is_order():  # pragma: no cover - would be an internal bug
                raise AssertionError("L:L failed order validation")
            self._order = o
        return self._order

    def is_invertible(self) -> bool:
        o = self.order()
        return self * o.colon(self) == o


def _std_dual(l: FullLattice) -> FullLattice:
    """Dual under the standard inner product (a pure Z-module operation)."""
    return FullLattice.from_basis_matrix(l.algebra, xn.rmat_inv(xn.transpose(l.basis)))


def index(sup: FullLattice, sub: FullLattice) -> int:
    """[sup : sub] for nested full lattices."""
    sup._same_algebra(sub)
    t = xn.mat_mul(xn.rmat_inv(sup.basis), sub.basis)
    if not xn.mat_is_integral(t):
        raise DomainError("index: second lattice is not contained in the first")
    return abs(int(xn.det(t)))


def dedekind_chain(l: FullLattice) -> list[FullLattice]:
    """The chain L < L^2 < ... < L^m = L^{m+1}; the last entry is an order.

    Requires 1 in L; the powers must stabilize within 4*dim steps.
    """
    if not l.contains(l.algebra.unit):
        raise DomainError("dedekind_chain: lattice does not contain 1")
    chain = [l]
    for _ in range(4 * l.algebra.dim):
        nxt = chain[-1] * l
        if nxt == chain[-1]:
            return chain
        if not nxt.contains_lattice(chain[-1]):  # pragma: no cover - 1 in L forbids
            raise DomainError("dedekind_chain: powers are not increasing")
        chain.append(nxt)
    raise DomainError("dedekind_chain: powers did not stabilize, "
                      "lattice is not contained in an order")


def span(algebra: Algebra, generators) -> FullLattice:
    """Convenience constructor for the lattice generated by coefficient vectors."""
    return FullLattice(algebra, generators)
