from fractions import Fraction
from random import Random

import pytest

from latclass import classes as cl
from latclass import families as fam
from latclass.errors import DomainError
from latclass.lattice import span

F = Fraction
H = Fraction(1, 2)


# ---------------------------------------------------------------------------
# split family, n = 3

def test_split3_orders_above_822():
    p = fam.SplitOrderParams(8, 2, -2)
    above = fam.split3_orders_above(p)
    assert {(q.a1, q.a2, q.a3) for q in above} == {
        (1, 1, 0), (1, 2, 0), (2, 1, 0), (2, 1, 1), (2, 2, 0),
        (4, 1, 1), (4, 2, 2), (8, 2, -2)}
    maxp = fam.SplitOrderParams(1, 1, 0)
    assert fam.split3_orders_above(maxp) == [maxp]


def test_split3_order_params_of_cyclic_generator():
    g = fam.SPLIT3.element((-2, 2, 0))
    zg = span(fam.SPLIT3, [fam.SPLIT3.unit, g, fam.SPLIT3.mul(g, g)])
    assert fam.split3_order_params(zg) == fam.SplitOrderParams(8, 2, -2)


def test_split_unit_sizes():
    expected = {
        (1, 1, 0): 8, (1, 2, 0): 8, (2, 1, 0): 8, (2, 1, 1): 8, (2, 2, 0): 8,
        (4, 1, 1): 4, (4, 2, 2): 4, (8, 2, -2): 2}
    for (a1, a2, a3), size in expected.items():
        order = fam.split3_order_lattice(fam.SplitOrderParams(a1, a2, a3))
        assert fam.split_unit_size(order) == size


def test_split3_conductors_and_group_sizes():
    rows = {
        (1, 1, 0): ((1, 1, 1), 1, 1),
        (1, 2, 0): ((1, 2, 2), 1, 1),
        (2, 1, 0): ((2, 1, 2), 1, 1),
        (2, 1, 1): ((2, 2, 1), 1, 1),
        (2, 2, 0): ((2, 2, 2), 1, 1),
        (4, 1, 1): ((4, 4, 1), 2, 1),
        (4, 2, 2): ((4, 4, 2), 2, 1),
        (8, 2, -2): ((8, 8, 4), 8, 1),
    }
    for (a1, a2, a3), (betas, units_small, gsize) in rows.items():
        p = fam.SplitOrderParams(a1, a2, a3)
        bs, cond = fam.split3_conductor(p)
        assert bs == betas
        order = fam.split3_order_lattice(p)
        assert cond == cl.conductor(fam.split3_order_lattice(
            fam.SplitOrderParams(1, 1, 0)), order) if (a1, a2, a3) != (1, 1, 0) \
            else cond == span(fam.SPLIT3, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
        n_small, _ = cl.quotient_units(cl.finite_quotient(order, cond))
        assert n_small == units_small
        assert fam.split3_group_size(p) == gsize


def test_split3_tau_rows():
    rows = {
        (1, 1, 0): ((0, 1, 1, 0), 1, 0, 1),
        (1, 2, 0): ((0, 2, 1, 0), 1, 0, 1),
        (2, 1, 0): ((0, 1, 2, 0), 1, 0, 1),
        (2, 1, 1): ((0, -1, 2, 0), 1, 0, 1),
        (2, 2, 0): ((0, 2, 2, 0), 2, 1, 2),
        (4, 1, 1): ((0, -1, 4, 0), 1, 0, 1),
        (4, 2, 2): ((0, -2, 4, 0), 2, 1, 2),
        (8, 2, -2): ((1, 6, 8, 0), 1, 0, 1),
    }
    for (a1, a2, a3), (abcd, mu, t, tau) in rows.items():
        data = fam.split3_tau(fam.SplitOrderParams(a1, a2, a3))
        assert (data.a, data.b, data.c, data.d) == abcd
        assert (data.mu, data.t, data.tau) == (mu, t, tau)


SPLIT_CLASS_TRIPLES = {
    (0, 0, 0): "L110",
    (0, H, 0): "L120",
    (0, 0, H): "L210",
    (H, 0, 0): "L211",
    (0, H, H): "L220",
    (H, 0, H): "I1",
    (F(1, 4), 0, 0): "L411",
    (H, H, F(1, 4)): "L422",
    (F(1, 4), 0, H): "I2",
    (F(1, 4), H, F(3, 8)): "L822",
}

SPLIT_CLASS_MATRICES = {
    "L110": ((-2, 0, 0), (0, 2, 0), (0, 0, 0)),
    "L120": ((-2, 0, 0), (0, 2, 1), (0, 0, 0)),
    "L210": ((-2, 0, -1), (0, 2, 0), (0, 0, 0)),
    "L211": ((-2, -2, 0), (0, 2, 0), (0, 0, 0)),
    "L220": ((-2, 0, -1), (0, 2, 1), (0, 0, 0)),
    "I1": ((-2, -2, -1), (0, 2, 0), (0, 0, 0)),
    "L411": ((-2, -1, 0), (0, 2, 0), (0, 0, 0)),
    "L422": ((-2, -2, -1), (0, 2, 1), (0, 0, 0)),
    "I2": ((-2, -1, -1), (0, 2, 0), (0, 0, 0)),
    "L822": ((-2, -1, -1), (0, 2, 1), (0, 0, 0)),
}


def test_split3_enumerate_2_0_minus2():
    classes = fam.split3_enumerate_classes((-2, 2, 0))
    assert len(classes) == 10
    by_triple = {tuple(rec["triple"]): rec for rec in classes}
    assert set(by_triple) == set(SPLIT_CLASS_TRIPLES)
    for triple, name in SPLIT_CLASS_TRIPLES.items():
        assert by_triple[triple]["matrix"] == SPLIT_CLASS_MATRICES[name]


def test_split3_normalize_matches_fixture_triples():
    # normal forms of the order lattices themselves
    cases = {
        (2, 1, 0): (0, 0, H),
        (4, 1, 1): (F(1, 4), 0, 0),
        (8, 2, -2): (F(1, 4), H, F(3, 8)),
    }
    for params, triple in cases.items():
        order = fam.split3_order_lattice(fam.SplitOrderParams(*params))
        assert fam.split3_normalize(order) == triple
    # the customary bases of the two non-order classes
    l1 = span(fam.SPLIT3, [(1, 0, 0), (H, 1, 0), (1, 1, 1)])
    l2 = span(fam.SPLIT3, [(4, 0, 0), (-1, 1, 0), (1, 1, 1)])
    assert fam.split3_normalize(l1) == (H, 0, H)
    assert fam.split3_normalize(l2) == (F(1, 4), 0, H)


def test_split3_normalize_is_unit_invariant():
    rng = Random(60)
    from _helpers import random_lattice
    for _ in range(40):
        l = random_lattice(rng, fam.SPLIT3)
        t = fam.split3_normalize(l)
        u = fam.SPLIT3.element([F(rng.randint(1, 9), rng.randint(1, 9))
                                * rng.choice((1, -1)) for _ in range(3)])
        assert fam.split3_normalize(l.scale(u)) == t
        assert fam.split3_normalize(fam.split3_lattice_of_triple(*t)) == t


def test_split3_normal_form_of_matrix_separates_the_six():
    # the six hand-picked matrices realize pairwise distinct classes
    ms = [
        ((2, 0, 0), (0, 0, 0), (0, 0, -2)),
        ((0, 0, 0), (1, 2, 0), (0, 0, -2)),
        ((0, 0, 0), (1, -2, 0), (0, 0, 2)),
        ((0, 4, 0), (1, 0, 0), (0, 0, 0)),
        ((2, 2, 0), (0, -2, 0), (0, 0, 0)),
        ((0, 0, 0), (1, 0, 4), (0, 1, 0)),
    ]
    forms = [fam.split3_normal_form_of_matrix(m) for m in ms]
    assert len(set(forms)) == 6


def test_split2():
    assert [rec["matrix"] for rec in fam.split2_enumerate(4)] == [
        ((4, 0), (0, 0)), ((4, 1), (0, 0)), ((4, 2), (0, 0))]
    assert fam.split2_enumerate(4)[2]["order_alpha"] == 2
    # order of L_delta with delta = 1/3 has alpha = 3
    l = span(fam.SPLIT2, [(1, 0), (F(1, 3), 1)])
    assert fam.split2_order_params(l.order()) == 3
    m = ((2, 2), (0, -2))
    assert fam.split2_normal_matrix(m) == (-2, 2, 2)
    m2 = ((0, 4), (1, 0))
    assert fam.split2_normal_matrix(m2) == (-2, 2, 1)
    # a known conjugate pair: [[2,1],[0,-2]] and [[0,4],[1,0]]
    assert fam.split2_normal_matrix(((2, 1), (0, -2))) == \
        fam.split2_normal_matrix(((0, 4), (1, 0)))


# ---------------------------------------------------------------------------
# jordan family

def test_jordan_delta_and_normalize():
    alg, a = fam.jordan_algebra(3)
    lam = span(alg, [(1, 0, 0), (0, 1, 0), (0, 0, 1)])
    assert fam.jordan_delta(lam) == 1
    order = span(alg, [(1, 0, 0), (0, 1, 0), (0, 0, F(1, 6))])
    assert fam.jordan_delta(order) == 6
    assert fam.jordan_invertible(order)
    l = span(alg, [(1, 0, 0), (0, 1, 0), (0, 0, 2)])   # <1, a, 2a^2>
    assert fam.jordan_delta(l) == F(1, 2)
    assert not fam.jordan_invertible(l)
    g22, g32, g33 = fam.jordan_normalize(l)
    assert (g22, g32, g33) == (1, 0, 2)


def test_jordan_delta_identities():
    rng = Random(61)
    from _helpers import random_lattice
    alg, _ = fam.jordan_algebra(3)
    from latclass.exactnum import nu_delta
    for _ in range(40):
        l = random_lattice(rng, alg)
        d = fam.jordan_delta(l)
        nu, de = nu_delta(d)
        assert fam.jordan_delta(l.order()) == nu * de
        assert fam.jordan_delta(l * l) == nu
        assert fam.jordan_invertible(l) == l.is_invertible()
        u = alg.element([rng.randint(1, 5), rng.randint(-3, 3), rng.randint(-3, 3)])
        assert fam.jordan_delta(l.scale(u)) == d


def test_jordan_orders_and_enumeration():
    alg, a = fam.jordan_algebra(3)
    order = span(alg, [(1, 0, 0), (0, F(1, 2), F(1, 16)), (0, 0, F(1, 24))])
    # alpha32 = 1/16 reduces modulo alpha33 = 1/24 to 1/48, so n4 = 1
    n2, n3, n4 = fam.jordan_order_params(order)
    assert (n2, n3, n4) == (2, 6, 1)
    assert fam.jordan_delta(order) == 6
    classes = fam.jordan_enumerate(n2, n3, n4)
    assert len(classes) == 4            # coprime splits of 6: 1*6, 2*3, 3*2, 6*1
    deltas = {F(rec["n1"], rec["d1"]) for rec in classes}
    assert deltas == {F(1, 6), F(2, 3), F(3, 2), F(6, 1)}


def test_jordan_decode():
    assert fam.jordan_decode(4, 6, 1) == (2, 6, 1, 2, 3)
    m = ((0, 4, -1), (0, 0, 6), (0, 0, 0))
    n2, n3, n4, n1, d1 = fam.jordan_decode(4, 6, 1)
    rec = next(r for r in fam.jordan_enumerate(n2, n3, n4)
               if (r["n1"], r["d1"]) == (n1, d1))
    assert rec["matrix"] == m
    with pytest.raises(DomainError):
        fam.jordan_decode(4, 6, 2)


def test_jordan_normal_form_of_matrix_round_trip():
    rng = Random(62)
    from latclass.conjugacy import random_unimodular
    from latclass import exactnum as xn
    for rec in fam.jordan_enumerate(2, 6, 1):
        m = rec["matrix"]
        u = random_unimodular(3, rng)
        conj = xn.mat_mul(xn.mat_mul(xn.unimodular_inverse(u), m), u)
        assert fam.jordan3_normal_form_of_matrix(conj) == \
            fam.jordan3_normal_form_of_matrix(m)
    # distinct classes separate
    forms = {fam.jordan3_normal_form_of_matrix(r["matrix"])
             for r in fam.jordan_enumerate(2, 6, 1)}
    assert len(forms) == 4


def test_jordan2():
    assert fam.jordan2_normal_matrix(((3, 4), (-1, 7))) == (5, 1)
    assert fam.jordan2_normal_matrix(((0, 6), (0, 0))) == (0, 6)
    assert fam.jordan2_normal_matrix(((2, 4), (-1, 6))) == (4, 1)


# ---------------------------------------------------------------------------
# mixed family

def test_mixed_order_params_round_trip():
    p = fam.MixedOrderParams(3, F(2), F(4, 3))
    order = fam.mixed_order_lattice(p)
    assert order.is_order()
    assert fam.mixed_order_params(order) == p
    # Lambda_alpha itself has containment triple (1, 1, 1)
    alpha = 4
    lam_a = fam.mixed_order_lattice(fam.MixedOrderParams(alpha, F(alpha), F(1)))
    assert lam_a.is_order()
    assert fam.mixed_containment_triple(
        fam.mixed_order_params(lam_a), alpha) == (1, 1, 1)


def test_mixed_normalize_invariance():
    rng = Random(63)
    from _helpers import random_lattice
    for _ in range(30):
        l = random_lattice(rng, fam.MIXED)
        t = fam.mixed_normalize(l)
        q1 = F(rng.randint(1, 7), rng.randint(1, 7)) * rng.choice((1, -1))
        q2 = F(rng.randint(1, 7), rng.randint(1, 7)) * rng.choice((1, -1))
        q3 = F(rng.randint(-5, 5), rng.randint(1, 5))
        u = fam.MIXED.element((q1, q2, q3))
        assert fam.mixed_normalize(l.scale(u)) == t
        assert fam.mixed_normalize(fam.mixed_lattice_of_triple(*t)) == t


def test_mixed_invertibility_criterion():
    assert not fam.mixed_invertible(F(1, 2), F(1), F(1, 4))
    assert fam.mixed_invertible(F(1, 2), F(1), F(1, 2))
    assert fam.mixed_invertible(F(0), F(3), F(0))
    rng = Random(64)
    from _helpers import random_lattice
    for _ in range(25):
        l = random_lattice(rng, fam.MIXED)
        t = fam.mixed_normalize(l)
        assert fam.mixed_invertible(*t) == l.is_invertible()
        assert (l * l).is_invertible()


def test_mixed_tau_and_matrix():
    p = fam.MixedOrderParams(4, F(2), F(1))   # n3 = a3*a1/a2 = 2
    mu, t, tau = fam.mixed_tau(p)
    assert (mu, t, tau) == (2, 1, 2)
    m = fam.mixed_matrix(F(0), F(1, 2), F(0), 4)
    assert m == ((0, 0, 2), (0, 4, 0), (0, 0, 0))
    from latclass.poly import charpoly, poly
    assert charpoly(m) == poly([0, 0, -4, 1])   # t^2 (t - 4)


def test_mixed_enumerate_and_w_classification():
    recs = fam.mixed_enumerate(2, max_n2=2)
    assert recs
    for rec in recs:
        lat = rec["lattice"]
        assert fam.mixed_normalize(lat) == tuple(rec["triple"])
        from latclass.poly import charpoly
        cp = charpoly(rec["matrix"])
        assert cp == (F(0), F(0), F(-2), F(1))   # t^3 - 2 t^2 = t^2 (t-2)


def test_mixed_normal_form_of_matrix():
    m = fam.mixed_matrix(F(0), F(1, 2), F(0), 4)
    lams, triple = fam.mixed_normal_form_of_matrix(m)
    assert lams == (0, 4)
    assert triple == (0, F(1, 2), 0)
    rng = Random(65)
    from latclass.conjugacy import random_unimodular
    from latclass import exactnum as xn
    u = random_unimodular(3, rng)
    conj = xn.mat_mul(xn.mat_mul(xn.unimodular_inverse(u), m), u)
    assert fam.mixed_normal_form_of_matrix(conj) == (lams, triple)


# ---------------------------------------------------------------------------
# flat3 family

def test_flat3_all_invertible_and_order_reps():
    rng = Random(66)
    from _helpers import random_lattice
    for _ in range(20):
        l = random_lattice(rng, fam.FLAT3)
        assert l.is_invertible()
        rep = fam.flat3_epsilon_rep(l)
        assert rep.is_order()
        # the representative is unit-equivalent to l
        assert cl.epsilon_equivalent_bounded(l, rep) is True
    # semigroup iso onto radical lattices: K(L1*L2) = K(L1) + K(L2)
    for _ in range(10):
        l1 = random_lattice(rng, fam.FLAT3)
        l2 = random_lattice(rng, fam.FLAT3)
        r1 = fam.flat3_epsilon_rep(l1)
        r2 = fam.flat3_epsilon_rep(l2)
        r12 = fam.flat3_epsilon_rep(l1 * l2)
        from latclass import exactnum as xn
        k1 = fam.flat3_radical_part(r1)
        k2 = fam.flat3_radical_part(r2)
        k12 = fam.flat3_radical_part(r12)
        d = xn.denominator_lcm(k1 + k2)
        summed = xn.hnf([[int(x * d) for x in row1 + row2]
                         for row1, row2 in zip(k1, k2)])
        summed = tuple(tuple(F(x, d) for x in row) for row in summed)
        assert summed == xn.mat_fractions(k12)


# ---------------------------------------------------------------------------
# the cubic fixture

def test_cubic_suite_full():
    suite = fam.cubic_suite()
    fx = suite["fixture"]
    # exactly the four orders lie between the smallest and the maximal
    assert {o for o in suite["orders_found"]} == set(fx.orders.values())
    # the multiplication-data rows, exactly
    expected = {
        "L1": (1, 4, 6, 2, 1, 0, 1),
        "L2": (4, 8, 6, 1, 1, 0, 1),
        "L3": (2, 8, 12, 4, 2, 1, 2),
        "L4": (1, 8, 24, 16, 1, 0, 1),
    }
    for name, row in expected.items():
        d = suite["tau"][name]
        assert (d.a, d.b, d.c, d.d, d.mu, d.t, d.tau) == row
    assert suite["unit_indices"] == {"L1": 1, "L2": 2, "L3": 4, "L4": 4}
    assert suite["quotient_units"]["L4"] == (32, 4)
    assert suite["quotient_units"]["L2"] == (2, 1)
    assert suite["quotient_units"]["L3"] == (4, 1)
    assert suite["group_sizes"] == {"L1": 1, "L2": 1, "L3": 1, "L4": 2}
    # L3 and L4 behaviour
    alg = fx.algebra
    assert fx.l3 * fx.l3 == fx.orders["L1"]
    assert not fx.l3.is_invertible()
    assert fx.l3.order() == fx.orders["L3"]
    assert fx.l4 == span(alg, [(2, 0, 0), (0, 2, 0), (1, 0, 2)])
    assert fx.l4.is_invertible()
    assert fx.l4.order() == fx.orders["L4"]
    assert cl.epsilon_equivalent_bounded(fx.l4, fx.orders["L4"]) is not True
    assert cl.w_equivalent(fx.l4, fx.orders["L4"])
    # the six matrices
    assert suite["matrices"] == {
        "L1": ((0, 0, -4), (2, 0, -4), (0, 2, -4)),
        "L2": ((0, 0, -4), (1, 0, -2), (0, 4, -4)),
        "L3": ((0, 0, -8), (1, 0, -4), (0, 2, -4)),
        "I3": ((0, 0, -8), (2, 0, -8), (0, 1, -4)),
        "L4": ((0, 0, -16), (1, 0, -8), (0, 1, -4)),
        "I4": ((0, -1, -2), (2, 0, -3), (0, 2, -4)),
    }


def test_cubic_conductor_bases():
    suite = fam.cubic_suite()
    fx = suite["fixture"]
    alg = fx.algebra
    assert suite["conductors"]["L2"] == span(alg, [(2, 0, 0), (0, 2, 0), (0, 0, 1)])
    assert suite["conductors"]["L3"] == span(alg, [(2, 0, 0), (0, 2, 0), (0, 0, 2)])
    assert suite["conductors"]["L4"] == span(alg, [(4, 0, 0), (0, 4, 0), (0, 0, 4)])


def test_split2_orders_above():
    assert fam.split2_orders_above(4) == [1, 2, 4]
    assert fam.split2_orders_above(1) == [1]


SPLIT_CHOSEN_BASES = [
    # (matrix M_i, basis B_i rows, order params)
    (((2, 0, 0), (0, 0, 0), (0, 0, -2)),
     ((0, 0, 1), (1, 0, 0), (0, 1, 0)), (1, 1, 0)),
    (((0, 0, 0), (1, 2, 0), (0, 0, -2)),
     ((0, 0, 1), (1, 2, 0), (1, 0, 0)), (1, 2, 0)),
    (((0, 0, 0), (1, -2, 0), (0, 0, 2)),
     ((1, -2, 0), (0, 0, 1), (1, 0, 0)), (2, 1, 0)),
    (((0, 4, 0), (1, 0, 0), (0, 0, 0)),
     ((1, -2, 0), (1, 2, 0), (0, 0, 1)), (4, 1, 1)),
    (((2, 2, 0), (0, -2, 0), (0, 0, 0)),
     ((0, 1, 0), (2, 1, 0), (0, 0, 1)), (2, 1, 1)),
    (((0, 0, 0), (1, 0, 4), (0, 1, 0)),
     ((1, -2, 4), (1, 2, 4), (1, 0, 0)), (8, 2, -2)),
]


def test_matrices_from_the_chosen_bases():
    from latclass.conjugacy import matrix_for
    g = fam.SPLIT3.element((-2, 2, 0))
    for matrix, basis, params in SPLIT_CHOSEN_BASES:
        order = fam.split3_order_lattice(fam.SplitOrderParams(*params))
        assert span(fam.SPLIT3, [tuple(row[j] for row in basis)
                                 for j in range(3)]) == order
        assert matrix_for(order, g, basis=basis) == matrix


def test_split3_normalize_boundary_alias():
    # the class of (1/3, 1/2, 0) also contains the window triple
    # (1/3, 1/2, 1/3); the lexicographic tie-break picks the first
    la = fam.split3_lattice_of_triple(F(1, 3), H, F(0))
    lb = fam.split3_lattice_of_triple(F(1, 3), H, F(1, 3))
    u = fam.SPLIT3.element((1, 1, -1))
    assert la.scale(u) == lb
    assert fam.split3_normalize(la) == (F(1, 3), H, 0)
    assert fam.split3_normalize(lb) == (F(1, 3), H, 0)
    # enumeration keeps one representative per class
    classes = fam.split3_enumerate_classes((-3, 3, 0))
    triples = [tuple(r["triple"]) for r in classes]
    assert len(triples) == len(set(triples))
    for rec in classes:
        assert fam.split3_normalize(rec["lattice"]) == tuple(rec["triple"])
