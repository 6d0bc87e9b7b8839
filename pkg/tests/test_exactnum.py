from fractions import Fraction
from random import Random

import pytest

from latclass import exactnum as xn
from latclass.errors import DomainError, RankError


def test_nu_delta_examples():
    assert xn.nu_delta(Fraction(-6, 4)) == (3, 2)
    assert xn.nu_delta(5) == (5, 1)
    assert xn.nu_delta(Fraction(2, 9)) == (2, 9)
    with pytest.raises(DomainError):
        xn.nu_delta(0)


def test_nu_delta_reconstructs():
    rng = Random(1)
    for _ in range(200):
        q = Fraction(rng.randint(-40, 40), rng.randint(1, 40))
        if q == 0:
            continue
        nu, de = xn.nu_delta(q)
        assert q == (1 if q > 0 else -1) * Fraction(nu, de)


def _gcd_q_oracle(q1, q2, bound=25):
    best = None
    for a in range(-bound, bound + 1):
        for b in range(-bound, bound + 1):
            v = a * q1 + b * q2
            if v > 0 and (best is None or v < best):
                best = v
    return best


def test_gcd_q_examples():
    assert xn.gcd_q(Fraction(2, 3), Fraction(10, 9)) == Fraction(2, 9)
    assert xn.gcd_q(Fraction(2, 3), Fraction(10, 9)) == _gcd_q_oracle(
        Fraction(2, 3), Fraction(10, 9))
    assert xn.gcd_q(Fraction(-7, 2), 0) == Fraction(7, 2)
    assert xn.gcd_q(4, 6) == 2
    with pytest.raises(DomainError):
        xn.gcd_q(0, 0)


def test_gcd_q_is_commutative_associative_semigroup():
    rng = Random(2)
    for _ in range(120):
        qs = [Fraction(rng.randint(1, 30), rng.randint(1, 30)) for _ in range(3)]
        a, b, c = qs
        assert xn.gcd_q(a, b) == xn.gcd_q(b, a)
        assert xn.gcd_q(xn.gcd_q(a, b), c) == xn.gcd_q(a, xn.gcd_q(b, c))


def test_gcd_q_matches_small_oracle():
    rng = Random(3)
    for _ in range(40):
        q1 = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        q2 = Fraction(rng.randint(1, 9), rng.randint(1, 9))
        assert xn.gcd_q(q1, q2) == _gcd_q_oracle(q1, q2)


# ---------------------------------------------------------------------------
# HNF

def _hnf_span_oracle(cols_a, cols_b, box=5):
    """Brute-force check that two full-rank integer column sets span the same
    lattice: compare exact membership for every point of a small box."""
    from itertools import product

    def member(cols, v):
        rows = [[col[i] for col in cols] for i in range(len(v))]
        try:
            sol = xn.rmat_solve(rows, v)
        except RankError:
            return False
        return all(x.denominator == 1 for x in sol)

    dim = len(cols_a[0])
    for v in product(range(-box, box + 1), repeat=dim):
        if member(cols_a, v) != member(cols_b, v):
            return False
    return True


def test_hnf_examples():
    # columns {(4,2),(2,2)} -> {(2,0),(0,2)}
    h = xn.hnf(((4, 2), (2, 2)))
    assert h == ((2, 0), (0, 2))
    assert _hnf_span_oracle([(4, 2), (2, 2)], xn.columns(h))
    assert xn.hnf(xn.identity(3)) == xn.identity(3)
    # columns {(1,0),(5,3)}: row-1 entries reduce modulo the pivot 1 to 0
    h = xn.hnf(((1, 5), (0, 3)))
    assert h == ((1, 0), (0, 3))
    assert _hnf_span_oracle([(1, 0), (5, 3)], xn.columns(h))


def test_hnf_shape_and_idempotence():
    rng = Random(4)
    for _ in range(150):
        n = rng.randint(1, 4)
        cols = n + rng.randint(0, 2)
        m = [[rng.randint(-6, 6) for _ in range(cols)] for _ in range(n)]
        try:
            h = xn.hnf(m)
        except RankError:
            continue
        # upper triangular, positive diagonal, reduced entries
        for i in range(n):
            assert h[i][i] > 0
            for j in range(n):
                if j < i:
                    assert h[i][j] == 0
                elif j > i:
                    assert 0 <= h[i][j] < h[i][i]
        assert xn.hnf(h) == h


def test_hnf_preserves_membership():
    rng = Random(5)
    for _ in range(60):
        n = rng.randint(2, 3)
        m = [[rng.randint(-4, 4) for _ in range(n)] for _ in range(n)]
        if xn.det(m) == 0:
            continue
        h = xn.hnf(m)
        # random integer combinations of original columns lie in span(h)
        for _ in range(10):
            coeffs = [rng.randint(-3, 3) for _ in range(n)]
            v = tuple(sum(c * m[i][j] for j, c in enumerate(coeffs)) for i in range(n))
            sol = xn.rmat_solve(h, v)
            assert all(x.denominator == 1 for x in sol)
        assert abs(xn.det(m)) == xn.det(h)


def test_hnf_rank_error():
    with pytest.raises(RankError):
        xn.hnf(((1, 2), (2, 4)))


# ---------------------------------------------------------------------------
# SNF

def _check_snf(m):
    u, s, v = xn.snf(m)
    assert xn.mat_mul(xn.mat_mul(u, m), v) == s
    assert abs(xn.det(u)) == 1
    assert abs(xn.det(v)) == 1
    diag = [s[i][i] for i in range(min(len(s), len(s[0])))]
    for i in range(len(s)):
        for j in range(len(s[0])):
            if i != j:
                assert s[i][j] == 0
    for a, b in zip(diag, diag[1:]):
        if a:
            assert b % a == 0
        else:
            assert b == 0
    assert all(d >= 0 for d in diag)
    return diag


def test_snf_examples():
    assert _check_snf(((2, 0), (0, 6))) == [2, 6]
    assert _check_snf(((2, 0), (0, 3))) == [1, 6]
    assert _check_snf(((0, 0), (0, 0))) == [0, 0]


def test_snf_random_and_det():
    rng = Random(6)
    for _ in range(150):
        rows = rng.randint(1, 4)
        cols = rng.randint(1, 4)
        m = tuple(tuple(rng.randint(-7, 7) for _ in range(cols)) for _ in range(rows))
        diag = _check_snf(m)
        if rows == cols:
            prod = 1
            for d in diag:
                prod *= d
            assert prod == abs(int(xn.det(m)))


def test_complete_to_basis():
    rng = Random(7)
    from math import gcd
    for _ in range(80):
        n = rng.randint(2, 4)
        y = [rng.randint(-5, 5) for _ in range(n)]
        g = 0
        for x in y:
            g = gcd(g, x)
        if g != 1:
            continue
        v = xn.complete_to_basis(y)
        assert [row[0] for row in v] == y
        assert abs(xn.det(v)) == 1
