"""Binary quadratic forms: the trace-matched matrix correspondence, Legendre
reduction, the finite semi-normal-form windows, the Conway river with its
period and automorph, quadratic-order data, and the SL2 vs GL2 split test.

The form [a,h,b] is a*x1^2 + h*x1*x2 + b*x2^2; a 2x2 matrix [[a,b],[c,d]]
with fixed trace corresponds to the form [c, d-a, -b].
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt
from typing import NamedTuple

from . import exactnum as xn
from . import poly as up
from .classes import finite_quotient, quotient_units
from .conjugacy import algebra_for_poly
from .errors import DomainError
from .lattice import FullLattice


class QuadForm(NamedTuple):
    a: int
    h: int
    b: int

    def four_disc(self) -> int:
        return self.h * self.h - 4 * self.a * self.b

    def disc(self) -> Fraction:
        return Fraction(self.four_disc(), 4)

    def reversed(self) -> "QuadForm":
        """The same unoriented edge read in the opposite direction."""
        return QuadForm(self.b, -self.h, self.a)


def reflect_form(f: QuadForm) -> QuadForm:
    """Representative of the mirror proper class within the GL2 class."""
    return QuadForm(-f.a, f.h, -f.b)


def is_square(n: int) -> bool:
    return n >= 0 and isqrt(n) ** 2 == n


def squarefree_split(n: int) -> tuple[int, int]:
    """n = delta * g^2 with delta squarefree (sign kept on delta)."""
    if n == 0:
        raise DomainError("zero has no squarefree part")
    sign = 1 if n > 0 else -1
    n = abs(n)
    delta, g = 1, 1
    p = 2
    while p * p <= n:
        e = 0
        while n % p == 0:
            n //= p
            e += 1
        if e % 2:
            delta *= p
        g *= p ** (e // 2)
        p += 1
    delta *= n
    return sign * delta, g


# ---------------------------------------------------------------------------
# matrix <-> form correspondence

def form_of_matrix(m) -> QuadForm:
    (a, b), (c, d) = m
    return QuadForm(int(c), int(d) - int(a), -int(b))


def matrix_of_form(f: QuadForm, trace: int) -> xn.Mat:
    if (trace - f.h) % 2:
        raise DomainError("matrix_of_form: trace and middle coefficient parity differ")
    a = (trace - f.h) // 2
    d = (trace + f.h) // 2
    return ((a, -f.b), (f.a, d))


def _conj_t(m, k: int) -> xn.Mat:
    """T^{-k} m T^k for T = [[1,1],[0,1]]."""
    (a, b), (c, d) = m
    return ((a - k * c, b + k * (a - d) - k * k * c), (c, d + k * c))


def _conj_s(m) -> xn.Mat:
    """S^{-1} m S for S = [[0,-1],[1,0]]."""
    (a, b), (c, d) = m
    return ((d, -c), (-b, a))


def _conj_flip(m) -> xn.Mat:
    """conjugation by diag(1,-1), the orientation-reversing generator."""
    (a, b), (c, d) = m
    return ((a, -b), (-c, d))


def legendre_reduce(m) -> xn.Mat:
    """Reduce into the window 0 < |c| <= |b|, a-d in (-|c|,|c|] with the
    boundary rule; requires an irreducible characteristic polynomial."""
    (a, b), (c, d) = (tuple(map(int, m[0])), tuple(map(int, m[1])))
    if is_square((a - d) ** 2 + 4 * b * c):
        raise DomainError("legendre_reduce: characteristic polynomial is reducible")
    m = ((a, b), (c, d))
    while True:
        (a, b), (c, d) = m
        # step 1: shift a-d into (-|c|, |c|]
        e = a - d
        ac = abs(c)
        target = ((e + ac - 1) % (2 * ac)) - ac + 1
        k = (e - target) // (2 * c)
        m = _conj_t(m, k)
        (a, b), (c, d) = m
        if abs(c) <= abs(b):
            break
        m = _conj_s(m)  # step 2: |c| strictly decreases
    (a, b), (c, d) = m
    if abs(c) == abs(b) and not 0 <= a - d <= abs(c):
        m = _conj_s(m)  # step 3 boundary rule
        (a, b), (c, d) = m
        if not 0 <= a - d <= abs(c):  # pragma: no cover - forced by the window
            raise AssertionError("legendre_reduce: boundary rule failed")
    return m


def enumerate_m(r: int, s: int, wide: bool = False) -> list[xn.Mat]:
    """The finite window M(r,s) of matrices with trace r and determinant s;
    with ``wide`` the slightly larger window with a-d in [-|c|,|c|]."""
    four_d = r * r - 4 * s
    if is_square(four_d):
        raise DomainError("enumerate_m: characteristic polynomial is reducible")
    out = []
    c = 1
    while (3 * c * c <= -four_d) if four_d < 0 else (4 * c * c <= four_d):
        for cc in (c, -c):
            emin = -c if wide else -c + 1
            for e in range(emin, c + 1):
                if (e - r) % 2:
                    continue
                bc = (four_d - e * e) // 4
                if bc % cc:
                    continue
                b = bc // cc
                if abs(cc) > abs(b):
                    continue
                if not wide and abs(cc) == abs(b) and e < 0:
                    continue
                a = (r + e) // 2
                d = (r - e) // 2
                out.append(((a, b), (cc, d)))
        c += 1
    return sorted(out)


# ---------------------------------------------------------------------------
# the Conway river

T_STEP = ((1, 1), (0, 1))
U_STEP = ((1, 0), (1, 1))


def _river_step(state: QuadForm) -> tuple[QuadForm, xn.Mat]:
    a, h, b = state
    c = a + b + h
    if c == 0:  # pragma: no cover - excluded by the nonsquare discriminant
        raise DomainError("river hit a zero region; discriminant is a square")
    if c > 0:
        return QuadForm(c, h + 2 * b, b), U_STEP
    return QuadForm(a, h + 2 * a, c), T_STEP


@dataclass(frozen=True)
class RiverCycle:
    """One period of the river: edge records (left a>0, label h, right b<0),
    the SL2 automorph of the starting edge, and the induced norm-1 unit."""
    period: tuple[QuadForm, ...]
    moves: tuple[str, ...]
    automorph: xn.Mat
    seed_matrix: xn.Mat
    delta: int
    unit_omega: tuple[int, int]

    def riverbends(self) -> tuple[QuadForm, ...]:
        return tuple(f for f in self.period if abs(f.a + f.b) < abs(f.h))


def _river_orbit(start: QuadForm) -> list[QuadForm]:
    states = [start]
    state = start
    while True:
        state, _ = _river_step(state)
        if state == start:
            return states
        if state in states:  # pragma: no cover - the river is a single cycle
            raise AssertionError("river walk re-entered mid-cycle")
        states.append(state)


def river(f: QuadForm) -> RiverCycle:
    """Walk one period of the Conway river of an indefinite nonsquare form."""
    f = QuadForm(*map(int, f))
    four_d = f.four_disc()
    if four_d <= 0 or is_square(four_d):
        raise DomainError("river: form must be indefinite with nonsquare discriminant")
    trace = f.h & 1
    m0 = legendre_reduce(matrix_of_form(f, trace))
    f0 = form_of_matrix(m0)
    if f0.a < 0:
        f0 = f0.reversed()
    orbit = _river_orbit(f0)
    # canonical period start: lexicographically minimal rotation
    k = min(range(len(orbit)), key=lambda i: orbit[i:] + orbit[:i])
    orbit = orbit[k:] + orbit[:k]
    moves = []
    autom = xn.identity(2)
    state = orbit[0]
    for _ in orbit:
        state, step = _river_step(state)
        moves.append("U" if step is U_STEP else "T")
        autom = xn.mat_mul(autom, step)
    if state != orbit[0]:  # pragma: no cover - period verified in _river_orbit
        raise AssertionError("automorph accumulation did not close the period")
    seed = matrix_of_form(orbit[0], orbit[0].h & 1)
    delta, unit = _unit_from_automorph(autom, seed)
    return RiverCycle(tuple(orbit), tuple(moves), autom, seed, delta, unit)


def _unit_from_automorph(p, seed) -> tuple[int, tuple[int, int]]:
    """Express the automorph as x + y*lambda1 in the (1, omega) basis."""
    (pa, pb), (pc, pd) = p
    (sa, sb), (sc, sd) = seed
    if sb == 0:  # pragma: no cover - seed forms have b != 0
        raise DomainError("seed matrix has zero upper-right entry")
    y = Fraction(pb, sb)
    x = Fraction(pa) - y * sa
    if (x + y * sd != pd) or (y * sc != pc):  # pragma: no cover
        raise AssertionError("automorph does not commute with the seed matrix")
    r = sa + sd
    four_d = (sa - sd) ** 2 + 4 * sb * sc
    delta, g = squarefree_split(four_d)
    lam0, lam1 = _lambda_in_omega(r, four_d)
    c0 = x + y * lam0
    c1 = y * lam1
    if c0.denominator != 1 or c1.denominator != 1:  # pragma: no cover
        raise AssertionError("norm-1 unit has non-integral coordinates")
    return delta, (int(c0), int(c1))


def _lambda_in_omega(r: int, four_d: int) -> tuple[Fraction, Fraction]:
    """Coordinates of lambda1 = r/2 + sqrt(four_d)/2 in the basis (1, omega)."""
    delta, g = squarefree_split(four_d)
    if delta % 4 == 1:
        # omega = (1 + sqrt(delta))/2, lambda1 = (r-g)/2 + g*omega
        return Fraction(r - g, 2), Fraction(g)
    # omega = sqrt(delta), lambda1 = r/2 + (g/2) omega
    return Fraction(r, 2), Fraction(g, 2)


def classify_types(f: QuadForm) -> tuple[set, set, set]:
    """Semi-normal forms of types A, B and C in the proper class of f,
    harvested from one river period and its adjacent positive-side edges."""
    cyc = river(QuadForm(*f))
    type_a: set[QuadForm] = set()
    type_b: set[QuadForm] = set()
    type_c: set[QuadForm] = set()
    for st in cyc.period:
        for cand in (st, st.reversed()):
            if abs(cand.a) <= abs(cand.b) and -abs(cand.a) <= cand.h <= abs(cand.a):
                type_a.add(cand)
        if abs(st.a + st.b) < abs(st.h):
            type_c.add(st)
        c = st.a + st.b + st.h
        if c > 0:
            type_b.add(QuadForm(st.a, st.h + 2 * st.a, c))
    return type_a, type_b, type_c


def proper_class_equal(f1: QuadForm, f2: QuadForm) -> bool:
    """True iff the river periods coincide (complete invariant for type IV)."""
    f1, f2 = QuadForm(*f1), QuadForm(*f2)
    if f1.four_disc() != f2.four_disc():
        raise DomainError("proper_class_equal: discriminants differ")
    return river(f1).period == river(f2).period


def sl2_conjugate(m1, m2) -> bool:
    """SL2(Z)-conjugacy of integer matrices with the same irreducible
    characteristic polynomial."""
    if _sl2_key(m1)[0] != _sl2_key(m2)[0]:  # pragma: no cover - same charpoly
        raise DomainError("matrices have different discriminant signs")
    return _sl2_key(m1) == _sl2_key(m2)


def matrices_conjugate(m1, m2) -> bool:
    """GL2(Z)-conjugacy for the irreducible quadratic case: proper equivalence
    of the forms, or proper equivalence after the orientation flip."""
    return sl2_conjugate(m1, m2) or sl2_conjugate(m1, _conj_flip(m2))


# ---------------------------------------------------------------------------
# quadratic orders Lambda_n = <1, n*omega>

def omega_poly(delta: int) -> up.Poly:
    """Minimal polynomial of the maximal-order generator omega."""
    if delta in (0, 1) or squarefree_split(delta)[1] != 1:
        raise DomainError("omega_poly: delta must be squarefree and not 0 or 1")
    if delta % 4 == 1:
        return up.poly([-(delta - 1) // 4, -1, 1])   # t^2 - t - (delta-1)/4
    return up.poly([-delta, 0, 1])                   # t^2 - delta


def quad_algebra(delta: int):
    return algebra_for_poly(omega_poly(delta))


def order_lambda_n(delta: int, n: int) -> FullLattice:
    alg, _ = quad_algebra(delta)
    return FullLattice(alg, [(1, 0), (0, n)])


def matrix_lattice(m) -> FullLattice:
    """The row-eigenvector lattice <c, -a+lambda1> in the (1, omega) algebra."""
    (a, b), (c, d) = (tuple(map(int, m[0])), tuple(map(int, m[1])))
    r = a + d
    four_d = (a - d) ** 2 + 4 * b * c
    if is_square(four_d):
        raise DomainError("matrix_lattice: characteristic polynomial is reducible")
    delta, _ = squarefree_split(four_d)
    alg, _ = quad_algebra(delta)
    lam0, lam1 = _lambda_in_omega(r, four_d)
    return FullLattice(alg, [(c, 0), (lam0 - a, lam1)])


def order_index_of_matrix(m) -> tuple[int, int]:
    """(delta, n) with O(L) = Lambda_n for the lattice of the matrix."""
    lat = matrix_lattice(m)
    o = lat.order()
    basis = o.basis
    if basis[0][0] != 1 or basis[0][1] != 0:  # pragma: no cover - orders contain 1
        raise AssertionError("unexpected order basis shape")
    (a, b), (c, d) = m
    delta, _ = squarefree_split((a - d) ** 2 + 4 * b * c)
    n = basis[1][1]
    if n.denominator != 1:  # pragma: no cover
        raise AssertionError("order basis is not integral")
    return delta, int(n)


# ---------------------------------------------------------------------------
# fundamental units and the SL2/GL2 split

def cf_pell(d: int) -> tuple[int, int, int]:
    """Fundamental solution of x^2 - d y^2 = +-1 by the continued fraction of
    sqrt(d); returns (x, y, norm)."""
    if d <= 0 or is_square(d):
        raise DomainError("cf_pell: d must be positive and not a square")
    a0 = isqrt(d)
    m_, d_, a = 0, 1, a0
    h_prev, h = 1, a0
    k_prev, k = 0, 1
    for _ in range(10_000):
        nrm = h * h - d * k * k
        if abs(nrm) == 1:
            return h, k, nrm
        m_ = d_ * a - m_
        d_ = (d - m_ * m_) // d_
        a = (a0 + m_) // d_
        h, h_prev = a * h + h_prev, h
        k, k_prev = a * k + k_prev, k
    raise DomainError("cf_pell: no solution found (should be impossible)")


def fundamental_unit(delta: int) -> tuple[tuple[int, int], int]:
    """Fundamental unit of the maximal order, as coordinates in (1, omega),
    together with its norm."""
    if delta <= 1:
        raise DomainError("fundamental_unit: delta must be a squarefree integer > 1")
    x, y, nrm = cf_pell(delta)
    if delta % 4 != 1:
        return (x, y), nrm
    # delta = 1 mod 4: search the half-integer units (p + q sqrt(delta))/2
    best = None
    for q in range(1, 2 * y + 1):
        for pm in (-4, 4):
            p2 = delta * q * q + pm
            if p2 > 0 and is_square(p2):
                p = isqrt(p2)
                if (p - q) % 2 == 0:
                    if best is None or (q, p) < (best[1], best[0]):
                        best = (p, q, pm // 4)
        if best:
            break
    p, q, nrm4 = best if best else (2 * x, 2 * y, nrm)
    return ((p - q) // 2, q), nrm4


def unit_in_order(delta: int, n: int) -> tuple[int, tuple[int, int], int]:
    """(index k, coordinates, norm) of the fundamental unit of Lambda_n,
    obtained as the least power of the maximal order's unit lying in it."""
    alg, _ = quad_algebra(delta)
    (u0, u1), nrm = fundamental_unit(delta)
    eps = alg.element([u0, u1])
    acc = eps
    for k in range(1, 10 * n + 1):
        if acc[1].denominator == 1 and int(acc[1]) % n == 0:
            return k, (int(acc[0]), int(acc[1])), nrm**k
        acc = alg.mul(acc, eps)
    raise DomainError("unit_in_order: power bound exceeded")


def gl2_splits(arg) -> bool:
    """True iff the GL2 class splits into two SL2 classes.

    Accepts an indefinite nonsquare QuadForm, or a pair (delta, n) naming the
    order Lambda_n; definite forms always split.
    """
    if isinstance(arg, tuple) and len(arg) == 2 and all(isinstance(x, int) for x in arg):
        delta, n = arg
    else:
        f = QuadForm(*arg)
        four_d = f.four_disc()
        if four_d < 0:
            return True
        if is_square(four_d):
            raise DomainError("gl2_splits: square discriminant is out of scope")
        m = matrix_of_form(f, f.h & 1)
        delta, n = order_index_of_matrix(m)
    if delta < 0:
        return True
    _, _, nrm = unit_in_order(delta, n)
    return nrm == 1


# ---------------------------------------------------------------------------
# GL2 / SL2 class enumeration for an irreducible quadratic

def _sl2_key(m):
    f = form_of_matrix(m)
    if f.four_disc() < 0:
        return ("v", legendre_reduce(m))
    return ("iv", river(f).period)


def gl2_classes(r: int, s: int) -> list[dict]:
    """GL2-conjugacy classes of integer matrices with trace r, det s
    (irreducible case), each with its SL2 split and window members."""
    members = enumerate_m(r, s)
    sl2_groups: dict = {}
    for m in members:
        sl2_groups.setdefault(_sl2_key(m), []).append(m)
    merged: list[dict] = []
    used = set()
    for key, group in sl2_groups.items():
        if key in used:
            continue
        used.add(key)
        mirror_key = _sl2_key(_conj_flip(group[0]))
        sl2_count = 1
        all_members = list(group)
        if mirror_key != key:
            used.add(mirror_key)
            sl2_count = 2
            all_members += sl2_groups.get(mirror_key, [])
        rep = sorted(all_members, key=lambda m: (m[1][0] <= 0, m))[0]
        merged.append({
            "representative": rep,
            "sl2_classes": sl2_count,
            "members": sorted(all_members),
        })
    merged.sort(key=lambda rec: rec["representative"])
    return merged


def quad_order_tables(delta: int, n_max: int) -> list[dict]:
    """Per-order data for Lambda_n, n <= n_max: conductor, quotient units,
    unit index, and the class-group ratio to the maximal order."""
    alg, omega = quad_algebra(delta)
    lam1 = order_lambda_n(delta, 1)
    f = omega_poly(delta)
    h1 = len(gl2_classes(int(-f[1]), int(f[0])))
    out = []
    for n in range(1, n_max + 1):
        lam_n = order_lambda_n(delta, n)
        rec = {"n": n, "basis": lam_n.basis, "class_number_max": h1}
        if n == 1:
            rec.update(conductor=None, unit_index=1, ratio=Fraction(1),
                       group_size=h1, units_small=1, units_big=1)
            if delta < 0:
                rec["unit_group_size"] = {-1: 4, -3: 6}.get(delta, 2)
            out.append(rec)
            continue
        cond = lam_n.colon(lam1)
        assert cond == lam1.scale(n)       # conductor is n * Lambda_1
        nb, big_units = quotient_units(finite_quotient(lam1, cond))
        ns, _ = quotient_units(finite_quotient(lam_n, cond))
        # Euler phi of n equals the small quotient's unit count
        phi = sum(1 for k in range(1, n + 1) if gcd(k, n) == 1)
        assert ns == phi
        # norm-gcd criterion for the big quotient
        crit = sum(1 for x in finite_quotient(lam1, cond).reps
                   if gcd(int(alg.norm(x)), n) == 1)
        assert crit == nb
        if delta > 0:
            unit_index = unit_in_order(delta, n)[0]
        else:
            unit_index = {-1: 2, -3: 3}.get(delta, 1)
        ratio = Fraction(nb, ns) / unit_index
        size = h1 * ratio
        assert size.denominator == 1 and size >= 1
        rec.update(conductor=cond.basis, unit_index=unit_index, ratio=ratio,
                   group_size=int(size), units_small=ns, units_big=nb)
        out.append(rec)
    return out


# ---------------------------------------------------------------------------
# simple SVG rendering of one river period

def svg_river(cycle: RiverCycle, width_per_edge: int = 90) -> str:
    """One period (plus a repeated edge) of the river as a standalone SVG."""
    period = cycle.period + (cycle.period[0],)
    w = width_per_edge
    total = w * len(period) + 40
    lines = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{total}" height="160" '
        f'viewBox="0 0 {total} 160">',
        '<style>text{font-family:monospace;font-size:12px}</style>',
    ]
    y = 80
    for i, f in enumerate(period):
        x0 = 20 + i * w
        x1 = x0 + w
        lines.append(f'<line x1="{x0}" y1="{y}" x2="{x1}" y2="{y}" '
                     'stroke="black" stroke-width="2"/>')
        arrow = "&#8594;" if f.h >= 0 else "&#8592;"
        lines.append(f'<text x="{x0 + w // 3}" y="{y - 28}" fill="darkgreen">{f.a}</text>')
        lines.append(f'<text x="{x0 + w // 3}" y="{y + 40}" fill="darkred">{f.b}</text>')
        lines.append(f'<text x="{x0 + w // 3}" y="{y - 6}">{arrow}{abs(f.h)}</text>')
        lines.append(f'<line x1="{x0}" y1="{y - 14}" x2="{x0}" y2="{y + 14}" '
                     'stroke="black" stroke-width="1"/>')
    lines.append("</svg>")
    return "\n".join(lines)
