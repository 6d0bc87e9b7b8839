"""Exact univariate polynomial arithmetic over Q, desk-scale factorization,
and characteristic/minimal polynomials of rational matrices.

A polynomial is a tuple of Fractions in ascending degree with no trailing
zeros; the zero polynomial is the empty tuple.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product as iproduct
from math import isqrt, lcm

from . import exactnum as xn
from .errors import DomainError, UnsupportedError

Poly = tuple[Fraction, ...]

MAX_FACTOR_DEGREE = 8


def poly(coeffs) -> Poly:
    c = [Fraction(x) for x in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def degree(p: Poly) -> int:
    return len(p) - 1


def is_zero(p: Poly) -> bool:
    return not p


def is_monic(p: Poly) -> bool:
    return bool(p) and p[-1] == 1


def constant(c) -> Poly:
    return poly([c])


X = poly([0, 1])


def add(p: Poly, q: Poly) -> Poly:
    n = max(len(p), len(q))
    return poly([(p[i] if i < len(p) else 0) + (q[i] if i < len(q) else 0) for i in range(n)])


def neg(p: Poly) -> Poly:
    return tuple(-c for c in p)


def sub(p: Poly, q: Poly) -> Poly:
    return add(p, neg(q))


def mul(p: Poly, q: Poly) -> Poly:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return poly(out)


def scale(p: Poly, c) -> Poly:
    return poly([Fraction(c) * x for x in p])


def shift(p: Poly, k: int) -> Poly:
    """Multiply by t^k."""
    if not p:
        return ()
    return poly([Fraction(0)] * k + list(p))


def divmod_poly(p: Poly, q: Poly) -> tuple[Poly, Poly]:
    if not q:
        raise DomainError("polynomial division by zero")
    rem = list(p)
    quo = [Fraction(0)] * max(len(p) - len(q) + 1, 0)
    dq = degree(q)
    lead = q[-1]
    for i in range(len(rem) - 1, dq - 1, -1):
        if rem[i]:
            f = rem[i] / lead
            quo[i - dq] = f
            for j, c in enumerate(q):
                rem[i - dq + j] -= f * c
    return poly(quo), poly(rem)


def mod(p: Poly, q: Poly) -> Poly:
    return divmod_poly(p, q)[1]


def divexact(p: Poly, q: Poly) -> Poly:
    quo, rem = divmod_poly(p, q)
    if rem:
        raise DomainError("polynomial division is not exact")
    return quo


def monic(p: Poly) -> Poly:
    if not p:
        return p
    return scale(p, Fraction(1, 1) / p[-1])


def gcd(p: Poly, q: Poly) -> Poly:
    while q:
        p, q = q, mod(p, q)
    return monic(p)


def xgcd(p: Poly, q: Poly) -> tuple[Poly, Poly, Poly]:
    """Extended gcd: returns monic (g, u, v) with u*p + v*q = g."""
    r0, r1 = p, q
    s0, s1 = constant(1), ()
    t0, t1 = (), constant(1)
    while r1:
        quo, rem = divmod_poly(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, sub(s0, mul(quo, s1))
        t0, t1 = t1, sub(t0, mul(quo, t1))
    if r0:
        c = r0[-1]
        r0, s0, t0 = monic(r0), scale(s0, 1 / c), scale(t0, 1 / c)
    return r0, s0, t0


def derivative(p: Poly) -> Poly:
    return poly([i * c for i, c in enumerate(p)][1:])


def evaluate(p: Poly, x):
    acc = Fraction(0)
    for c in reversed(p):
        acc = acc * x + c
    return acc


def power(p: Poly, k: int) -> Poly:
    out = constant(1)
    for _ in range(k):
        out = mul(out, p)
    return out


def to_string(p: Poly, var: str = "t") -> str:
    if not p:
        return "0"
    parts = []
    for i in range(len(p) - 1, -1, -1):
        c = p[i]
        if c == 0:
            continue
        if i == 0:
            term = str(c)
        else:
            mag = "" if abs(c) == 1 else str(abs(c)) + "*"
            pv = var if i == 1 else f"{var}^{i}"
            term = ("-" if c < 0 else "") + mag + pv
        if parts and not term.startswith("-"):
            parts.append("+" + term)
        else:
            parts.append(term)
    return "".join(parts)


def from_string(text: str, var: str = "t") -> Poly:
    """Parse sums of monomials like ``t^3+4t^2+8t+16`` or ``t^2-t-1``."""
    s = text.replace(" ", "").replace("**", "^").replace("*", "")
    if not s:
        raise DomainError("empty polynomial string")
    s = s.replace("-", "+-")
    coeffs: dict[int, Fraction] = {}
    for tok in s.split("+"):
        if not tok:
            continue
        if var in tok:
            head, _, tail = tok.partition(var)
            exp = int(tail[1:]) if tail.startswith("^") else 1
            if head in ("", "-"):
                c = Fraction(-1 if head == "-" else 1)
            else:
                c = Fraction(head)
        else:
            exp = 0
            c = Fraction(tok)
        coeffs[exp] = coeffs.get(exp, Fraction(0)) + c
    out = [Fraction(0)] * (max(coeffs) + 1)
    for e, c in coeffs.items():
        out[e] = c
    return poly(out)


# ---------------------------------------------------------------------------
# factorization at desk scale

def squarefree_decompose(f: Poly) -> list[tuple[Poly, int]]:
    """Yun decomposition of a monic f into pairwise-coprime squarefree parts."""
    if not is_monic(f):
        raise DomainError("squarefree_decompose: polynomial must be monic")
    if degree(f) < 1:
        raise DomainError("squarefree_decompose: degree must be >= 1")
    out: list[tuple[Poly, int]] = []
    g = gcd(f, derivative(f))
    w = divexact(f, g)
    k = 1
    while degree(w) > 0:
        y = gcd(w, g)
        factor = divexact(w, y)
        if degree(factor) > 0:
            out.append((monic(factor), k))
        w, g = y, divexact(g, y)
        k += 1
    return out


def _int_coeffs(f: Poly) -> tuple[list[int], int]:
    """Substitute t -> u/m to make a monic rational f integer monic in u.

    Returns (integer coefficients ascending, m) for g(u) = m^n f(u/m).
    """
    n = degree(f)
    m = 1
    for c in f:
        m = lcm(m, c.denominator)
    g = [f[i] * Fraction(m) ** (n - i) for i in range(n + 1)]
    return [int(c) for c in g], m


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = set()
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            out.update((d, n // d))
    return sorted(out)


def _rational_roots(g: list[int]) -> list[Fraction]:
    """Rational roots of an integer polynomial (ascending coefficients)."""
    c0 = next(c for c in g if c != 0)
    lead = g[-1]
    roots = []
    zero_mult = next(i for i, c in enumerate(g) if c != 0)
    if zero_mult:
        roots.append(Fraction(0))
    for p in _divisors(c0):
        for q in _divisors(lead):
            for r in (Fraction(p, q), Fraction(-p, q)):
                if evaluate(poly(g), r) == 0 and r not in roots:
                    roots.append(r)
    return roots


def _kronecker_factor(h: Poly) -> Poly | None:
    """A monic factor of degree in [2, min(4, deg//2)] of a monic integer
    squarefree h with no rational roots, or None if irreducible that way."""
    n = degree(h)
    for d in range(2, min(4, n // 2) + 1):
        points = [0, 1, -1, 2, -2, 3, -3][: d + 1]
        values = [int(evaluate(h, x)) for x in points]
        divisor_sets = []
        for v in values:
            ds = _divisors(v)
            divisor_sets.append([x for d_ in ds for x in (d_, -d_)])
        for combo in iproduct(*divisor_sets):
            g = _interpolate(points, combo)
            if degree(g) != d or g[-1] == 0:
                continue
            g = monic(g)
            if any(c.denominator != 1 for c in g):
                continue
            quo, rem = divmod_poly(h, g)
            if not rem:
                return g
    return None


def _interpolate(xs, ys) -> Poly:
    out: Poly = ()
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        term = constant(yi)
        for j, xj in enumerate(xs):
            if j != i:
                term = scale(mul(term, poly([-xj, 1])), Fraction(1, xi - xj))
        out = add(out, term)
    return out


def _factor_squarefree_monic_int(g: Poly) -> list[Poly]:
    """Complete factorization of a monic squarefree integer polynomial."""
    if degree(g) > MAX_FACTOR_DEGREE:
        raise UnsupportedError(f"unsupported degree {degree(g)} > {MAX_FACTOR_DEGREE}")
    factors = []
    for r in _rational_roots([int(c) for c in g]):
        lin = poly([-r, 1])
        while True:
            quo, rem = divmod_poly(g, lin)
            if rem:
                break
            factors.append(lin)
            g = quo
    while degree(g) >= 2:
        k = _kronecker_factor(g)
        if k is None:
            factors.append(g)
            g = constant(1)
            break
        factors.append(k)
        g = divexact(g, k)
    return factors


def factor_rationals(f: Poly) -> list[tuple[Poly, int]]:
    """Factor a monic f over Q into monic irreducibles with multiplicities."""
    if not is_monic(f):
        raise DomainError("factor_rationals: polynomial must be monic")
    if degree(f) == 0:
        return []
    out: dict[Poly, int] = {}
    for part, mult in squarefree_decompose(f):
        ints, m = _int_coeffs(part)
        g = poly(ints)
        for piece in _factor_squarefree_monic_int(g):
            # undo the t -> u/m substitution: factor(t) = m^-deg piece(m t)
            d = degree(piece)
            back = monic(poly([piece[i] * Fraction(m) ** i for i in range(d + 1)]))
            out[back] = out.get(back, 0) + mult
    return sorted(out.items(), key=lambda kv: (degree(kv[0]), kv[0]))


# ---------------------------------------------------------------------------
# characteristic and minimal polynomials

def charpoly(m) -> Poly:
    """Characteristic polynomial det(t*I - m) of a square rational matrix.

    Evaluated by fraction-free elimination at n+1 integer points, then
    interpolated; exact throughout.
    """
    n = len(m)
    xs = list(range(n + 1))
    ys = []
    for x in xs:
        a = [[(Fraction(x) if i == j else Fraction(0)) - Fraction(m[i][j]) for j in range(n)]
             for i in range(n)]
        ys.append(xn.det(a))
    p = _interpolate(xs, ys)
    if not is_monic(p) or degree(p) != n:  # pragma: no cover - internal check
        raise DomainError("charpoly: interpolation failed")
    return p


def minpoly(m) -> Poly:
    """Minimal polynomial via Krylov iteration on the standard basis vectors."""
    n = len(m)
    mm = xn.mat_fractions(m)
    out = constant(1)
    for start in range(n):
        v = tuple(Fraction(1 if i == start else 0) for i in range(n))
        krylov = [v]
        while True:
            v = xn.mat_vec(mm, krylov[-1])
            cols = krylov + [v]
            # look for a rational dependence of v on the previous vectors
            a = [[cols[j][i] for j in range(len(krylov))] for i in range(n)]
            sol = _solve_least(a, v)
            if sol is not None:
                p = poly(list(map(lambda c: -c, sol)) + [1])
                break
            krylov.append(v)
        g = gcd(out, p)
        out = divexact(mul(out, p), g)
        if degree(out) == n:
            break
    return out


def _solve_least(a, b):
    """Solve a*x = b exactly if consistent (a has full column rank), else None."""
    rows, cols = len(a), len(a[0]) if a else 0
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
    if len(piv_cols) < cols:
        return None  # dependent columns: caller extends the Krylov space
    for i in range(r, rows):
        if m[i][cols] != 0:
            return None
    sol = [Fraction(0)] * cols
    for i, c in enumerate(piv_cols):
        sol[c] = m[i][cols]
    return tuple(sol)


def char_min_poly(m) -> tuple[Poly, Poly]:
    """(characteristic polynomial, minimal polynomial) of a square matrix."""
    cp = charpoly(m)
    mp = minpoly(m)
    if mod(cp, mp):  # pragma: no cover - internal consistency
        raise DomainError("minimal polynomial does not divide characteristic polynomial")
    return cp, mp
