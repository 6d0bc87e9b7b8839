"""Finite dimensional commutative Q-algebras with unit.

An algebra is given by structure constants C with e_i*e_j = sum_k C[i][j][k] e_k;
elements are coefficient tuples of Fractions with respect to that basis.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exactnum as xn
from . import poly as up
from .errors import DomainError, UnsupportedError

Element = tuple[Fraction, ...]


class Algebra:
    """Commutative Q-algebra with unit, defined by structure constants."""

    def __init__(self, structure, unit, label=None, family="generic",
                 defining_poly=None, generator=None, validate=True):
        self.structure = tuple(
            tuple(tuple(Fraction(x) for x in row) for row in plane) for plane in structure
        )
        self.dim = len(self.structure)
        self.unit = tuple(Fraction(x) for x in unit)
        self.label = label
        self.family = family
        self.defining_poly = defining_poly
        self.generator = tuple(Fraction(x) for x in generator) if generator else None
        if validate:
            self.validate()

    # -- construction checks -------------------------------------------------
    def validate(self):
        n = self.dim
        basis = [self.basis_element(i) for i in range(n)]
        for i in range(n):
            for j in range(i, n):
                if self.structure[i][j] != self.structure[j][i]:
                    raise DomainError("structure constants are not commutative")
        for i in range(n):
            if self.mul(self.unit, basis[i]) != basis[i]:
                raise DomainError("unit element does not act as identity")
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    left = self.mul(self.mul(basis[i], basis[j]), basis[k])
                    right = self.mul(basis[i], self.mul(basis[j], basis[k]))
                    if left != right:
                        raise DomainError("structure constants are not associative")

    # -- element arithmetic ---------------------------------------------------
    def basis_element(self, i) -> Element:
        return tuple(Fraction(1 if j == i else 0) for j in range(self.dim))

    def element(self, coeffs) -> Element:
        v = tuple(Fraction(x) for x in coeffs)
        if len(v) != self.dim:
            raise DomainError("element has wrong length")
        return v

    def scalar(self, q) -> Element:
        return tuple(Fraction(q) * c for c in self.unit)

    def mul(self, x, y) -> Element:
        n = self.dim
        out = [Fraction(0)] * n
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                c = xi * yj
                row = self.structure[i][j]
                for k in range(n):
                    if row[k]:
                        out[k] += c * row[k]
        return tuple(out)

    def add(self, x, y) -> Element:
        return tuple(a + b for a, b in zip(x, y))

    def sub(self, x, y) -> Element:
        return tuple(a - b for a, b in zip(x, y))

    def smul(self, q, x) -> Element:
        q = Fraction(q)
        return tuple(q * a for a in x)

    def mult_matrix(self, x) -> xn.Mat:
        """Matrix of multiplication by x with respect to the algebra basis."""
        n = self.dim
        cols = [self.mul(x, self.basis_element(j)) for j in range(n)]
        return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))

    def is_unit(self, x) -> bool:
        return xn.det(self.mult_matrix(x)) != 0

    def inv(self, x) -> Element | None:
        m = self.mult_matrix(x)
        if xn.det(m) == 0:
            return None
        return xn.rmat_solve(m, self.unit)

    def norm(self, x) -> Fraction:
        return xn.det(self.mult_matrix(x))

    def elem_power(self, x, k: int) -> Element:
        out = self.unit
        for _ in range(k):
            out = self.mul(out, x)
        return out

    def eval_poly(self, p, x) -> Element:
        out = self.scalar(0)
        for c in reversed(p):
            out = self.add(self.mul(out, x), self.scalar(c))
        return out

    def is_nilpotent(self, x) -> bool:
        y = x
        for _ in range(self.dim):
            if all(c == 0 for c in y):
                return True
            y = self.mul(y, x)
        return all(c == 0 for c in y)

    def __repr__(self):
        tag = self.label or self.family
        return f"Algebra(dim={self.dim}, {tag})"


# ---------------------------------------------------------------------------
# constructors

def cyclic_algebra(f) -> tuple[Algebra, Element]:
    """The algebra Q[t]/(f) with basis (1, g, ..., g^{n-1}); returns (A, g)."""
    f = up.poly(f)
    if not up.is_monic(f) or up.degree(f) < 1:
        raise DomainError("cyclic_algebra: polynomial must be monic of degree >= 1")
    n = up.degree(f)
    structure = []
    for i in range(n):
        plane = []
        for j in range(n):
            prod = up.mod(up.shift(up.constant(1), i + j), f)
            plane.append(tuple(prod[k] if k < len(prod) else Fraction(0) for k in range(n)))
        structure.append(tuple(plane))
    unit = [1] + [0] * (n - 1)
    gen = [0, 1] + [0] * (n - 2) if n >= 2 else [-f[0]]
    alg = Algebra(structure, unit, label=f"Q[t]/({up.to_string(f)})", family="cyclic",
                  defining_poly=f, generator=gen, validate=False)
    return alg, alg.generator


def split_algebra(n: int) -> Algebra:
    """Q e_1 + ... + Q e_n with e_i e_j = delta_ij e_i."""
    structure = [[[Fraction(1) if i == j == k else Fraction(0) for k in range(n)]
                  for j in range(n)] for i in range(n)]
    return Algebra(structure, [1] * n, label=f"Q^{n}", family="split", validate=False)


def mixed_algebra() -> Algebra:
    """Q e1 + Q e2 + Q a with e_i e_j = delta_ij e_i, e1 a = 0, e2 a = a, a^2 = 0."""
    z = Fraction(0)
    o = Fraction(1)
    e1e1 = (o, z, z)
    e2e2 = (z, o, z)
    zero = (z, z, z)
    a_ = (z, z, o)
    structure = (
        (e1e1, zero, zero),   # e1*e1, e1*e2, e1*a
        (zero, e2e2, a_),     # e2*e1, e2*e2, e2*a
        (zero, a_, zero),     # a*e1, a*e2, a*a
    )
    return Algebra(structure, (1, 1, 0), label="Q e1 + Q e2 + Q a", family="mixed",
                   validate=False)


def flat3_algebra() -> Algebra:
    """Q 1 + Q a + Q b with a^2 = ab = b^2 = 0 (the non-cyclic 3-dim algebra)."""
    z = Fraction(0)
    o = Fraction(1)
    one = (o, z, z)
    a_ = (z, o, z)
    b_ = (z, z, o)
    zero = (z, z, z)
    structure = (
        (one, a_, b_),
        (a_, zero, zero),
        (b_, zero, zero),
    )
    return Algebra(structure, (1, 0, 0), label="Q[x,y]/(x^2,xy,y^2)", family="flat3",
                   validate=False)


def algebra_to_json(alg: Algebra) -> dict:
    """JSON descriptor: dimension, flattened structure tensor, unit, label."""
    n = alg.dim
    flat = [str(alg.structure[i][j][k])
            for i in range(n) for j in range(n) for k in range(n)]
    return {"dim": n, "structure": flat,
            "unit": [str(c) for c in alg.unit], "label": alg.label}


def algebra_from_json(data: dict) -> Algebra:
    n = int(data["dim"])
    flat = [Fraction(s) for s in data["structure"]]
    if len(flat) != n**3:
        raise DomainError("algebra descriptor: structure tensor has wrong size")
    structure = [[[flat[(i * n + j) * n + k] for k in range(n)]
                  for j in range(n)] for i in range(n)]
    return Algebra(structure, [Fraction(s) for s in data["unit"]],
                   label=data.get("label"))


# ---------------------------------------------------------------------------
# multiplicative metrics

@dataclass(frozen=True)
class MultMetric:
    """A nondegenerate multiplication-invariant symmetric bilinear form."""
    algebra: Algebra
    gram: xn.Mat

    def pairing(self, x, y) -> Fraction:
        return sum(Fraction(xi) * g for xi, g in zip(x, xn.mat_vec(self.gram, y)))

    def validate(self):
        g = self.gram
        n = self.algebra.dim
        if any(g[i][j] != g[j][i] for i in range(n) for j in range(n)):
            raise DomainError("metric is not symmetric")
        if xn.det(g) == 0:
            raise DomainError("metric is degenerate")
        basis = [self.algebra.basis_element(i) for i in range(n)]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    ab = self.algebra.mul(basis[i], basis[j])
                    bc = self.algebra.mul(basis[j], basis[k])
                    if self.pairing(ab, basis[k]) != self.pairing(basis[i], bc):
                        raise DomainError("metric is not multiplication invariant")


def canonical_metric(alg: Algebra) -> MultMetric:
    """Gram matrix G_ij = l(g^{i+j}) where l vanishes on 1, g, ..., g^{n-2}
    and takes value 1 on g^{n-1}; requires a cyclic power-basis presentation."""
    if alg.family != "cyclic" or alg.defining_poly is None:
        raise UnsupportedError("canonical_metric: algebra is not in cyclic presentation")
    n = alg.dim
    f = alg.defining_poly
    lvals = []
    for m in range(2 * n - 1):
        r = up.mod(up.shift(up.constant(1), m), f)
        lvals.append(r[n - 1] if len(r) >= n else Fraction(0))
    gram = tuple(tuple(lvals[i + j] for j in range(n)) for i in range(n))
    return MultMetric(alg, gram)


# ---------------------------------------------------------------------------
# structure decomposition

@dataclass(frozen=True)
class Decomposition:
    """Orthogonal idempotents, component bases, separable part and radical."""
    algebra: Algebra
    components: tuple  # tuple of (idempotent, tuple of component basis vectors)
    separable_basis: tuple
    radical_basis: tuple
    projection: xn.Mat  # matrix of pr_F : A -> A (image spans separable part)

    def project(self, x) -> Element:
        return xn.mat_vec(self.projection, x)


def _semisimple_part(alg: Algebra) -> Element:
    """Jordan-Chevalley semisimple part of the generator, by Newton iteration
    on the squarefree part of the defining polynomial."""
    f = alg.defining_poly
    radical = up.divexact(f, up.gcd(f, up.derivative(f)))
    s = alg.generator
    gp = up.derivative(radical)
    for _ in range(alg.dim + 1):
        val = alg.eval_poly(radical, s)
        if all(c == 0 for c in val):
            return s
        dinv = alg.inv(alg.eval_poly(gp, s))
        s = alg.sub(s, alg.mul(val, dinv))
    raise DomainError("semisimple part iteration did not converge")  # pragma: no cover


def decompose(alg: Algebra) -> Decomposition:
    """Canonical decomposition into components, separable part and radical."""
    n = alg.dim
    if alg.family == "cyclic":
        f = alg.defining_poly
        factors = up.factor_rationals(f)
        idems = []
        for fj, mult in factors:
            pj = up.power(fj, mult)
            qj = up.divexact(f, pj)
            g, u, _ = up.xgcd(qj, pj)
            if up.degree(g) != 0:  # pragma: no cover - factors are coprime
                raise DomainError("idempotent computation failed")
            idem = alg.eval_poly(up.mod(up.mul(u, qj), f), alg.generator)
            idems.append(idem)
        s = _semisimple_part(alg)
        proj_cols = [alg.unit]
        acc = alg.unit
        for _ in range(n - 1):
            acc = alg.mul(acc, s)
            proj_cols.append(acc)
        projection = tuple(tuple(proj_cols[j][i] for j in range(n)) for i in range(n))
    elif alg.family == "split":
        idems = [alg.basis_element(i) for i in range(n)]
        projection = xn.identity(n, Fraction(1))
    elif alg.family == "mixed":
        idems = [alg.basis_element(0), alg.basis_element(1)]
        projection = xn.mat([[1, 0, 0], [0, 1, 0], [0, 0, 0]])
    elif alg.family == "flat3":
        idems = [alg.unit]
        projection = xn.mat([[1, 0, 0], [0, 0, 0], [0, 0, 0]])
    else:
        raise UnsupportedError(f"decompose: unsupported algebra family {alg.family!r}")

    components = []
    for idem in idems:
        comp_basis = xn.column_space_basis(alg.mult_matrix(idem))
        components.append((tuple(idem), tuple(comp_basis)))
    separable = xn.column_space_basis(xn.mat_fractions(projection))
    radical = xn.nullspace(xn.mat_fractions(projection))
    return Decomposition(alg, tuple(components), tuple(separable), tuple(radical),
                         xn.mat_fractions(projection))
