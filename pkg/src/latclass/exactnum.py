"""Exact scalar and matrix arithmetic over Z and Q.

Scalars are Python ints and ``fractions.Fraction``; matrices are tuples of
row tuples.  Everything here is exact -- no floating point anywhere.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm

from .errors import DomainError, RankError

Mat = tuple[tuple, ...]


def nu_delta(q) -> tuple[int, int]:
    """Numerator and denominator of |q| as a reduced fraction."""
    q = Fraction(q)
    if q == 0:
        raise DomainError("nu_delta: zero has no reduced numerator/denominator")
    return abs(q.numerator), q.denominator


def gcd_q(q1, q2) -> Fraction:
    """The positive generator of Z*q1 + Z*q2.

    For qi = pi/si reduced this is gcd(p1*s2, p2*s1) / (s1*s2).
    """
    q1, q2 = Fraction(q1), Fraction(q2)
    if q1 == 0 and q2 == 0:
        raise DomainError("gcd_q: (0, 0) generates the zero lattice")
    if q1 == 0:
        return abs(q2)
    if q2 == 0:
        return abs(q1)
    p1, s1 = q1.numerator, q1.denominator
    p2, s2 = q2.numerator, q2.denominator
    return Fraction(gcd(p1 * s2, p2 * s1), s1 * s2)


# ---------------------------------------------------------------------------
# generic dense matrix helpers

def mat(rows) -> Mat:
    return tuple(tuple(r) for r in rows)


def identity(n, one=1) -> Mat:
    return tuple(tuple(one if i == j else 0 * one for j in range(n)) for i in range(n))


def zeros(rows, cols) -> Mat:
    return tuple((0,) * cols for _ in range(rows))


def transpose(a) -> Mat:
    return tuple(zip(*a))


def mat_mul(a, b) -> Mat:
    bt = list(zip(*b))
    return tuple(tuple(sum(x * y for x, y in zip(row, col)) for col in bt) for row in a)


def mat_vec(a, v) -> tuple:
    return tuple(sum(x * y for x, y in zip(row, v)) for row in a)


def mat_add(a, b) -> Mat:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mat_scale(a, c) -> Mat:
    return tuple(tuple(c * x for x in row) for row in a)


def mat_eq_zero(a) -> bool:
    return all(all(x == 0 for x in row) for row in a)


def columns(a) -> list[tuple]:
    return [tuple(row[j] for row in a) for j in range(len(a[0]))]


def from_columns(cols) -> Mat:
    return tuple(tuple(col[i] for col in cols) for i in range(len(cols[0])))


def denominator_lcm(a) -> int:
    d = 1
    for row in a:
        for x in row:
            d = lcm(d, Fraction(x).denominator)
    return d


def mat_fractions(a) -> Mat:
    return tuple(tuple(Fraction(x) for x in row) for row in a)


def mat_is_integral(a) -> bool:
    return all(Fraction(x).denominator == 1 for row in a for x in row)


def mat_int(a) -> Mat:
    if not mat_is_integral(a):
        raise DomainError("matrix is not integral")
    return tuple(tuple(int(x) for x in row) for row in a)


def det(a) -> Fraction:
    """Determinant by fraction-free Bareiss elimination (exact)."""
    n = len(a)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in a):
        raise DomainError("det: matrix must be square")
    d = denominator_lcm(a)
    m = [[int(Fraction(x) * d) for x in row] for row in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return Fraction(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return Fraction(sign * m[n - 1][n - 1], d**n)


def rmat_inv(a) -> Mat:
    """Inverse of a square rational matrix by Gauss-Jordan elimination."""
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(1 if i == j else 0) for j in range(n)]
         for i, row in enumerate(a)]
    for col in range(n):
        piv = next((r for r in range(col, n) if m[r][col] != 0), None)
        if piv is None:
            raise RankError("rmat_inv: singular matrix")
        m[col], m[piv] = m[piv], m[col]
        p = m[col][col]
        m[col] = [x / p for x in m[col]]
        for r in range(n):
            if r != col and m[r][col] != 0:
                f = m[r][col]
                m[r] = [x - f * y for x, y in zip(m[r], m[col])]
    return tuple(tuple(row[n:]) for row in m)


def rmat_solve(a, b) -> tuple:
    """Solve a*x = b for a square nonsingular rational matrix."""
    return mat_vec(rmat_inv(a), b)


def nullspace(a) -> list[tuple]:
    """Basis of the rational kernel of a (rows x cols)."""
    rows, cols = len(a), len(a[0]) if a else 0
    m = [[Fraction(x) for x in row] for row in a]
    pivots = []
    r = 0
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
        pivots.append(c)
        r += 1
        if r == rows:
            break
    free = [c for c in range(cols) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * cols
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -m[i][fc]
        basis.append(tuple(v))
    return basis


def column_space_basis(a) -> list[tuple]:
    """A basis (subset of columns) of the rational column space of a."""
    cols = columns(mat_fractions(a))
    kept: list[tuple] = []
    ref: list[list[Fraction]] = []
    for c in cols:
        v = [Fraction(x) for x in c]
        for row in ref:
            p = next(i for i, x in enumerate(row) if x != 0)
            if v[p] != 0:
                f = v[p] / row[p]
                v = [x - f * y for x, y in zip(v, row)]
        if any(x != 0 for x in v):
            ref.append(v)
            kept.append(c)
    return kept


# ---------------------------------------------------------------------------
# Hermite and Smith normal forms over Z

def hnf(a) -> Mat:
    """Column-style Hermite normal form of an integer matrix.

    The columns of ``a`` (rows x cols, cols >= rows) must span a rank-`rows`
    lattice; zero columns are tolerated.  Returns the unique rows x rows
    upper triangular basis with positive diagonal and, in every row, the
    entries right of the diagonal reduced into [0, diagonal).
    """
    rows = len(a)
    cols = [list(col) for col in columns(a)]
    for c in cols:
        for x in c:
            if not isinstance(x, int):
                raise DomainError("hnf: entries must be integers")
    pivots: list[list[int] | None] = [None] * rows
    avail = cols
    for i in range(rows - 1, -1, -1):
        live = [c for c in avail if c[i] != 0]
        if not live:
            raise RankError("hnf: columns do not span a full lattice")
        # gcd elimination within row i
        while len(live) > 1:
            live.sort(key=lambda c: abs(c[i]))
            base = live[0]
            for c in live[1:]:
                q = c[i] // base[i]
                if q:
                    for k in range(rows):
                        c[k] -= q * base[k]
            live = [c for c in live if c[i] != 0]
        piv = live[0]
        if piv[i] < 0:
            for k in range(rows):
                piv[k] = -piv[k]
        pivots[i] = piv
        avail = [c for c in avail if c is not piv]
    for c in avail:
        if any(x != 0 for x in c):  # pragma: no cover - guarded by rank logic
            raise RankError("hnf: leftover column not reduced to zero")
    h = [list(col) for col in pivots]  # h[j] is column j
    for j in range(rows):
        for i in range(j - 1, -1, -1):
            q = h[j][i] // h[i][i]
            if q:
                for k in range(rows):
                    h[j][k] -= q * h[i][k]
    return tuple(tuple(h[j][i] for j in range(rows)) for i in range(rows))


def snf(a) -> tuple[Mat, Mat, Mat]:
    """Smith normal form with transforms: returns (u, s, v) with u*a*v = s.

    s is diagonal with nonnegative entries d_i | d_{i+1}; u and v are
    unimodular.
    """
    rows = len(a)
    cols = len(a[0]) if rows else 0
    s = [[int(x) for x in row] for row in a]
    u = [[1 if i == j else 0 for j in range(rows)] for i in range(rows)]
    v = [[1 if i == j else 0 for j in range(cols)] for i in range(cols)]

    def row_sub(i, j, q):  # row_i -= q*row_j
        s[i] = [x - q * y for x, y in zip(s[i], s[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_sub(i, j, q):  # col_i -= q*col_j
        for r in range(rows):
            s[r][i] -= q * s[r][j]
        for r in range(cols):
            v[r][i] -= q * v[r][j]

    def row_swap(i, j):
        if i != j:
            s[i], s[j] = s[j], s[i]
            u[i], u[j] = u[j], u[i]

    def col_swap(i, j):
        if i != j:
            for r in range(rows):
                s[r][i], s[r][j] = s[r][j], s[r][i]
            for r in range(cols):
                v[r][i], v[r][j] = v[r][j], v[r][i]

    def clear_at(t) -> bool:
        """Pivot at (t,t) and clear row/column t; False if trailing block is 0."""
        while True:
            best = None
            for i in range(t, rows):
                for j in range(t, cols):
                    if s[i][j] != 0 and (best is None or abs(s[i][j]) < abs(s[best[0]][best[1]])):
                        best = (i, j)
            if best is None:
                return False
            row_swap(t, best[0])
            col_swap(t, best[1])
            for i in range(t + 1, rows):
                if s[i][t]:
                    row_sub(i, t, s[i][t] // s[t][t])
            for j in range(t + 1, cols):
                if s[t][j]:
                    col_sub(j, t, s[t][j] // s[t][t])
            if all(s[i][t] == 0 for i in range(t + 1, rows)) and \
               all(s[t][j] == 0 for j in range(t + 1, cols)):
                if s[t][t] < 0:
                    s[t] = [-x for x in s[t]]
                    u[t] = [-x for x in u[t]]
                return True
            # nonzero remainders became smaller entries; repeat with new pivot

    rank = 0
    for t in range(min(rows, cols)):
        if not clear_at(t):
            break
        rank += 1

    # enforce divisibility d_i | d_{i+1} by folding and re-clearing
    changed = True
    while changed:
        changed = False
        for i in range(rank - 1):
            if s[i + 1][i + 1] % s[i][i] != 0:
                col_sub(i, i + 1, -1)  # col_i += col_{i+1}
                for t in range(i, rank):
                    clear_at(t)
                changed = True
                break
    return mat(u), mat(s), mat(v)


def snf_diagonal(a) -> tuple[int, ...]:
    _, s, _ = snf(a)
    return tuple(s[i][i] for i in range(min(len(s), len(s[0]) if s else 0)))


def unimodular_inverse(a) -> Mat:
    """Integer inverse of a unimodular integer matrix."""
    inv = rmat_inv(a)
    return mat_int(inv)


def complete_to_basis(y) -> Mat:
    """A unimodular integer matrix whose first column is the primitive vector y.

    Prefers the completion (y, e_1, ..., e_n with e_k dropped) where k is the
    first index with |y_k| = 1; falls back to an extended-gcd completion.
    """
    n = len(y)
    y = [int(x) for x in y]
    if gcd(*y, 0) != 1:
        raise DomainError("complete_to_basis: vector is not primitive")
    k = next((i for i, x in enumerate(y) if abs(x) == 1), None)
    if k is not None:
        cols = [tuple(y)]
        for j in range(n):
            if j != k:
                cols.append(tuple(1 if i == j else 0 for i in range(n)))
        return from_columns(cols)
    # general completion: U*y = +-e_1 with U unimodular, then V = U^{-1} sign-fixed
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    g = list(y)
    for i in range(1, n):
        a_, b_ = g[0], g[i]
        if b_ == 0:
            continue
        # extended gcd on (a_, b_)
        old_r, r = a_, b_
        old_s, s_ = 1, 0
        old_t, t_ = 0, 1
        while r:
            q = old_r // r
            old_r, r = r, old_r - q * r
            old_s, s_ = s_, old_s - q * s_
            old_t, t_ = t_, old_t - q * t_
        p, q_ = old_s, old_t
        gg = old_r
        r0 = [p * x0 + q_ * xi for x0, xi in zip(u[0], u[i])]
        r1 = [(-b_ // gg) * x0 + (a_ // gg) * xi for x0, xi in zip(u[0], u[i])]
        u[0], u[i] = r0, r1
        g[0], g[i] = gg, 0
    vinv = mat(u)
    v = unimodular_inverse(vinv)
    if g[0] < 0:
        v = tuple(tuple(-x if j == 0 else x for j, x in enumerate(row)) for row in v)
    return v
