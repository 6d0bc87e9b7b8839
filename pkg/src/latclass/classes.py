"""Equivalences of full lattices, conductors, finite quotient unit groups,
the class-group size ratio, and the tau count of w-classes in dimension 3.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iproduct
from math import gcd

from . import exactnum as xn
from .algebra import Decomposition
from .errors import DomainError, ResourceError
from .lattice import FullLattice

QUOTIENT_CAP = 10**6


def w_equivalent(l1: FullLattice, l2: FullLattice) -> bool:
    """Mutual-multiple equivalence: L1 ~ L2 iff 1 lies in (L1:L2)(L2:L1)."""
    if l1 == l2:
        return True
    t12 = l1.colon(l2)
    t21 = l2.colon(l1)
    return l1.algebra.unit in (t12 * t21)


def conductor(big: FullLattice, small: FullLattice) -> FullLattice:
    """The conductor small:big of nested orders small < big."""
    if not (big.is_order() and small.is_order()):
        raise DomainError("conductor: both lattices must be orders")
    if big == small or not big.contains_lattice(small):
        raise DomainError("conductor: need small strictly contained in big")
    c = small.colon(big)
    if not small.contains_lattice(c):  # pragma: no cover - internal check
        raise AssertionError("conductor is not contained in the small order")
    if big * c != c:  # pragma: no cover - internal check
        raise AssertionError("conductor is not an ideal of the big order")
    return c


@dataclass(frozen=True)
class FiniteQuotient:
    """The finite quotient order/ideal with explicit coset representatives."""
    order: FullLattice
    ideal: FullLattice
    diagonal: tuple[int, ...]
    reps: tuple[tuple, ...]

    @property
    def size(self) -> int:
        n = 1
        for d in self.diagonal:
            n *= d
        return n


def finite_quotient(order: FullLattice, ideal: FullLattice,
                    cap: int = QUOTIENT_CAP) -> FiniteQuotient:
    """Coset representatives of order/ideal via the Smith normal form box."""
    if not order.contains_lattice(ideal):
        raise DomainError("finite_quotient: ideal is not contained in the order")
    m = xn.mat_int(xn.mat_mul(xn.rmat_inv(order.basis), ideal.basis))
    u, s, _ = xn.snf(m)
    n = order.algebra.dim
    diag = tuple(s[i][i] for i in range(n))
    size = 1
    for d in diag:
        size *= d
    if size > cap:
        raise ResourceError(f"quotient has {size} cosets, above the cap of {cap}")
    uinv = xn.unimodular_inverse(u)
    reps = []
    for k in iproduct(*(range(d) for d in diag)):
        coords = xn.mat_vec(uinv, k)
        reps.append(xn.mat_vec(order.basis, coords))
    return FiniteQuotient(order, ideal, diag, tuple(reps))


def quotient_units(q: FiniteQuotient) -> tuple[int, list[tuple]]:
    """Size and representatives of the unit group of the finite quotient.

    x + C is a unit iff 1 lies in the lattice x*order + C.
    """
    alg = q.order.algebra
    units = []
    ideal_gens = q.ideal.generators()
    for x in q.reps:
        mgens = [alg.mul(x, g) for g in q.order.generators()]
        lat = FullLattice(alg, mgens + ideal_gens)
        if alg.unit in lat:
            units.append(x)
    return len(units), units


def class_group_ratio(big: FullLattice, small: FullLattice,
                      unit_index: int) -> Fraction:
    """|G([small])| / |G([big])| from the conductor-quotient unit counts and
    the unit-group index [big^unit : small^unit] supplied by the caller."""
    c = conductor(big, small)
    nb, _ = quotient_units(finite_quotient(big, c))
    ns, _ = quotient_units(finite_quotient(small, c))
    return Fraction(nb, ns) / unit_index


@dataclass(frozen=True)
class TauData:
    """Multiplication data of a 3-dim order basis (1, w1, w2) with w1*w2 scalar."""
    a: int
    b: int
    c: int
    d: int
    mu: int
    t: int
    tau: int
    omega1: tuple
    omega2: tuple


def _unit_first_basis(order: FullLattice) -> list[tuple]:
    """A Z-basis of the order starting with 1, then the canonical columns."""
    alg = order.algebra
    y = order.coords(alg.unit)
    if any(c.denominator != 1 for c in y):  # pragma: no cover - orders contain 1
        raise DomainError("order does not contain 1")
    v = xn.complete_to_basis([int(c) for c in y])
    cols = xn.columns(xn.mat_mul(order.basis, xn.mat_fractions(v)))
    return cols


def faddeev_tau(order: FullLattice) -> TauData:
    """Number of w-classes of exact ideals of a 3-dimensional order, 2^t.

    Expects a basis (1, w1, w2); shifts it so w1*w2 is a scalar, reads the
    four multiplication integers and returns mu = gcd and tau = 2^t.
    """
    alg = order.algebra
    if alg.dim != 3:
        raise DomainError("faddeev_tau: order must be 3-dimensional")
    if not order.is_order():
        raise DomainError("faddeev_tau: lattice is not an order")
    one, w1, w2 = _unit_first_basis(order)

    def in_basis(x) -> tuple:
        rows = [[one[i], w1[i], w2[i]] for i in range(3)]
        sol = xn.rmat_solve(rows, x)
        return sol

    prod0 = in_basis(alg.mul(w1, w2))
    k1, k2 = prod0[1], prod0[2]
    w1 = alg.sub(w1, alg.smul(k2, one))
    w2 = alg.sub(w2, alg.smul(k1, one))
    prod = in_basis(alg.mul(w1, w2))
    if prod[1] != 0 or prod[2] != 0:
        raise DomainError("faddeev_tau: no shift makes w1*w2 scalar")
    sq1 = in_basis(alg.mul(w1, w1))
    sq2 = in_basis(alg.mul(w2, w2))
    b, a = sq1[1], sq1[2]
    d, c = sq2[1], sq2[2]
    vals = [a, b, c, d, prod[0], sq1[0], sq2[0]]
    if any(x.denominator != 1 for x in vals):  # pragma: no cover
        raise DomainError("faddeev_tau: basis products are not integral")
    a, b, c, d = int(a), int(b), int(c), int(d)
    if sq1[0] != -a * c or sq2[0] != -b * d or prod[0] != a * d:
        raise DomainError("faddeev_tau: multiplication data is inconsistent "
                          "(algebra not separable-compatible)")
    mu = gcd(a, b, c, d)
    if mu == 0:
        raise DomainError("faddeev_tau: all four multiplication integers vanish")
    t = len(_prime_divisors(mu))
    return TauData(a, b, c, d, mu, t, 2**t, tuple(w1), tuple(w2))


def _prime_divisors(n: int) -> list[int]:
    n = abs(n)
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def project_lattice_matrix(dec: Decomposition, lat: FullLattice) -> xn.Mat:
    """pr_F(L) as a canonical basis matrix in coordinates of the separable basis."""
    from math import lcm

    fbasis_rows = [[v[i] for v in dec.separable_basis] for i in range(dec.algebra.dim)]
    coords = []
    for g in lat.generators():
        sol = _lstsq_exact(fbasis_rows, dec.project(g))
        if sol is None:  # pragma: no cover - projection lands in F by construction
            raise DomainError("projection left the separable subspace")
        coords.append(sol)
    d = 1
    for c in coords:
        for x in c:
            d = lcm(d, x.denominator)
    fdim = len(dec.separable_basis)
    rows = [[int(c[i] * d) for c in coords] for i in range(fdim)]
    h = xn.hnf(rows)
    return tuple(tuple(Fraction(x, d) for x in row) for row in h)


def projection_check(order: FullLattice, dec: Decomposition,
                     samples: int = 10, seed: int = 0) -> bool:
    """Check that pr_F maps the order to an order of the separable part and
    respects lattice products on sampled pairs."""
    from random import Random

    alg = order.algebra
    if dec.algebra is not alg:
        raise DomainError("decomposition belongs to a different algebra")
    fbasis_rows = [[v[i] for v in dec.separable_basis] for i in range(alg.dim)]

    def ambient(coords):
        return tuple(sum(Fraction(c) * dec.separable_basis[j][i]
                         for j, c in enumerate(coords)) for i in range(alg.dim))

    def in_projected(pm, coords) -> bool:
        return all(x.denominator == 1 for x in xn.rmat_solve(pm, coords))

    po = project_lattice_matrix(dec, order)
    unit_f = _lstsq_exact(fbasis_rows, dec.project(alg.unit))
    if not in_projected(po, unit_f):
        return False
    fcols = xn.columns(po)
    for x in fcols:
        for y in fcols:
            prod = _lstsq_exact(fbasis_rows, alg.mul(ambient(x), ambient(y)))
            if not in_projected(po, prod):
                return False
    rng = Random(seed)
    for _ in range(samples):
        m1 = [[rng.randint(-2, 2) for _ in range(alg.dim)] for _ in range(alg.dim)]
        m2 = [[rng.randint(-2, 2) for _ in range(alg.dim)] for _ in range(alg.dim)]
        if xn.det(m1) == 0 or xn.det(m2) == 0:
            continue
        l1 = FullLattice(alg, xn.columns(m1))
        l2 = FullLattice(alg, xn.columns(m2))
        p12 = project_lattice_matrix(dec, l1 * l2)
        # product of the projections, computed inside F
        cols = []
        for x in xn.columns(project_lattice_matrix(dec, l1)):
            for y in xn.columns(project_lattice_matrix(dec, l2)):
                cols.append(_lstsq_exact(fbasis_rows, alg.mul(ambient(x), ambient(y))))
        from math import lcm
        d = 1
        for c in cols:
            for x in c:
                d = lcm(d, x.denominator)
        rows = [[int(c[i] * d) for c in cols] for i in range(len(cols[0]))]
        prod_proj = tuple(tuple(Fraction(x, d) for x in row) for row in xn.hnf(rows))
        if p12 != prod_proj:
            return False
    return True


def _lstsq_exact(a, b):
    rows = len(a)
    cols = len(a[0]) if a else 0
    m = [[Fraction(x) for x in row] + [Fraction(b[i])] for i, row in enumerate(a)]
    r = 0
    piv_cols = []
    for c in range(cols):
        piv = next((i for i in range(r, rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        p = m[r][c]
        m[r] = [x / p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        piv_cols.append(c)
        r += 1
    for i in range(r, rows):
        if m[i][cols] != 0:
            return None
    sol = [Fraction(0)] * cols
    for i, c in enumerate(piv_cols):
        sol[c] = m[i][cols]
    return tuple(sol)


def principal_unit_witness(transporter: FullLattice, source: FullLattice,
                           target: FullLattice, bound: int = 3):
    """Search the transporter for a unit u with u*source == target.

    Sound but incomplete: candidates are short integer combinations of the
    transporter's canonical generators with coefficients in [-bound, bound].
    """
    alg = transporter.algebra
    gens = transporter.generators()
    n = len(gens)
    combos = sorted(iproduct(range(-bound, bound + 1), repeat=n),
                    key=lambda c: (sum(abs(x) for x in c), c))
    for coeffs in combos:
        if all(c == 0 for c in coeffs):
            continue
        u = tuple(sum(Fraction(c) * g[i] for c, g in zip(coeffs, gens))
                  for i in range(alg.dim))
        if not alg.is_unit(u):
            continue
        if source.scale(u) == target:
            return u
    return None


def epsilon_equivalent_bounded(l1: FullLattice, l2: FullLattice,
                               bound: int = 3):
    """Three-valued epsilon test: True / False / None (undecided).

    Complete on the negative side via the order invariant and the w-test;
    positive answers come from an explicit unit witness.
    """
    if l1 == l2:
        return True
    if l1.order() != l2.order():
        return False
    # quick win: proportional bases
    ratio = None
    ok = True
    for r1, r2 in zip(l1.basis, l2.basis):
        for x, y in zip(r1, r2):
            if x == 0 and y == 0:
                continue
            if x == 0 or y == 0:
                ok = False
                break
            q = y / x
            if ratio is None:
                ratio = q
            elif ratio != q:
                ok = False
                break
        if not ok:
            break
    if ok and ratio is not None:
        return True
    if not w_equivalent(l1, l2):
        return False
    witness = principal_unit_witness(l2.colon(l1), l1, l2, bound)
    if witness is not None:
        return True
    return None
