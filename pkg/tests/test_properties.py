"""Property tests over seeded random structures."""
import random
from itertools import combinations

from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import oracles
from congrkit.algebra import (cg, con, is_congruence_permutable, lattice_algebra, make_algebra,
                              product, product_congruence, quotient)
from congrkit.catalog import all_residuated, ordinal_sum, ordinal_sum_congruence, random_lattice
from congrkit.cblp import algebra_has_cblp, cblp_equivalents, lifting_maps, satisfies_star
from congrkit.lattice import (boolean_center, dual, filters, id_local, is_distributive,
                              lattice_product, maximal_ideals, normality_profile, rad_id)
from congrkit.reslat import filters as rl_filters
from congrkit.partition import Congruence

SETTINGS = settings(max_examples=60, deadline=None,
                    suppress_health_check=[HealthCheck.too_slow])

seeds = st.integers(0, 2 ** 31)


@st.composite
def lattices(draw, lo=1, hi=6):
    n = draw(st.integers(lo, hi))
    return random_lattice(n, random.Random(draw(seeds)), name=f"h{n}")


@st.composite
def distributive_lattices(draw):
    L = draw(lattices(1, 7))
    if not is_distributive(L):
        # products of chains are always distributive
        a = random_lattice(2, random.Random(0))
        L = lattice_product(a, a) if draw(st.booleans()) else random_lattice(1, random.Random(0))
    return L


@st.composite
def small_algebras(draw):
    n = draw(st.integers(1, 4))
    f = draw(st.lists(st.integers(0, n - 1), min_size=n, max_size=n))
    g = draw(st.lists(st.integers(0, n - 1), min_size=n * n, max_size=n * n))
    return make_algebra("h", n, {"f": (1, f), "g": (2, g)})


residuated_pool = [A for n in range(1, 5) for A in all_residuated(n)]


def rel_set(C):
    return {oracles.to_relation(t) for t in C.elements}


@SETTINGS
@given(small_algebras())
def test_con_equals_relation_oracle(alg):
    assert rel_set(con(alg)) == set(oracles.congruences(alg))


@SETTINGS
@given(small_algebras())
def test_permutability_matches_relation_composition(alg):
    C = con(alg)
    assert is_congruence_permutable(alg, C) == oracles.permutable(
        [oracles.to_relation(t) for t in C.elements])


@SETTINGS
@given(lattices(), seeds)
def test_homomorphism_theorem(L, seed):
    alg = lattice_algebra(L)
    C = con(alg)
    rng = random.Random(seed)
    theta = C[rng.randrange(len(C))]
    X = [(rng.randrange(L.size), rng.randrange(L.size)) for _ in range(rng.randint(1, 3))]
    q = quotient(alg, theta)
    assert cg(q.target, [(q(a), q(b)) for a, b in X]) == q.image(cg(alg, X).join(theta))


@SETTINGS
@given(lattices(1, 4), lattices(1, 4))
def test_product_congruences_are_products(L, M):
    A, B = lattice_algebra(L), lattice_algebra(M)
    P, codec = product([A, B])
    CA, CB, CP = con(A), con(B), con(P)
    pairs = [(a, b) for a in CA.elements for b in CB.elements]
    prods = [product_congruence([a, b]) for a, b in pairs]
    assert set(prods) == set(CP.elements) and len(set(prods)) == len(pairs)
    for (a1, b1), p1 in zip(pairs, prods):
        for (a2, b2), p2 in zip(pairs, prods):
            assert p1.leq(p2) == (a1.leq(a2) and b1.leq(b2))


@SETTINGS
@given(lattices(1, 4), lattices(1, 4), seeds)
def test_generated_congruence_of_product(L, M, seed):
    A, B = lattice_algebra(L), lattice_algebra(M)
    P, codec = product([A, B])
    rng = random.Random(seed)
    X = [(rng.randrange(P.size), rng.randrange(P.size)) for _ in range(rng.randint(1, 3))]
    X1 = [(codec.decode(x)[0], codec.decode(y)[0]) for x, y in X]
    X2 = [(codec.decode(x)[1], codec.decode(y)[1]) for x, y in X]
    assert cg(P, X) == product_congruence([cg(A, X1), cg(B, X2)])


@SETTINGS
@given(lattices())
def test_interval_maps(L):
    C = con(lattice_algebra(L))
    for t in range(len(C)):
        m = lifting_maps(C, t)
        assert m.s_iso and m.triangle


@SETTINGS
@given(lattices())
def test_cblp_matches_relation_oracle(L):
    alg = lattice_algebra(L)
    C = con(alg)
    fails = {oracles.to_relation(C[i]) for i in algebra_has_cblp(C).failing}
    congs = oracles.congruences(alg)
    assert fails == set(oracles.cblp_failures(congs, L.size))
    assert satisfies_star(C).holds == oracles.star(congs, L.size)


@SETTINGS
@given(lattices())
def test_six_way_agreement(L):
    assert cblp_equivalents(con(lattice_algebra(L))).agree


@SETTINGS
@given(lattices(1, 7))
def test_dual_is_involution_and_preserves_center(L):
    D = dual(L)
    assert dual(D) == L
    assert set(boolean_center(D).elements) == set(boolean_center(L).elements)


@SETTINGS
@given(distributive_lattices())
def test_conormal_is_normal_of_dual(L):
    a, b = normality_profile(L), normality_profile(dual(L))
    assert a.conormal == b.normal and a.b_conormal == b.b_normal


@SETTINGS
@given(distributive_lattices())
def test_rad_id_is_meet_of_maximal_ideals(L):
    expect = frozenset(range(L.size))
    for I in maximal_ideals(L):
        expect &= I
    assert rad_id(L) == expect
    assert id_local(L) == (len(maximal_ideals(L)) == 1)


@SETTINGS
@given(lattices(1, 4), lattices(1, 4))
def test_boolean_center_of_product(L, M):
    LM = lattice_product(L, M)
    assert len(boolean_center(LM).elements) == \
        len(boolean_center(L).elements) * len(boolean_center(M).elements)


@SETTINGS
@given(lattices(1, 5))
def test_lattice_filters_by_subsets(L):
    n = L.size
    found = set()
    for mask in range(1, 1 << n):
        S = {x for x in range(n) if mask >> x & 1}
        up = all(y in S for x in S for y in range(n) if L.leq[x, y])
        meet = all(int(L.meet[x, y]) in S for x in S for y in S)
        if up and meet:
            found.add(frozenset(S))
    assert found == set(filters(L))


@SETTINGS
@given(lattices(1, 4), lattices(1, 4))
def test_ordinal_sum_congruences(L, M):
    S = ordinal_sum(L, M)
    cs = set(con(lattice_algebra(S)).elements)
    built = {ordinal_sum_congruence(p, q, L, M) for p in con(lattice_algebra(L)).elements
             for q in con(lattice_algebra(M)).elements}
    assert cs == built


@SETTINGS
@given(st.sampled_from(residuated_pool))
def test_residuation_consequences(A):
    n = A.size
    P, I, leq, one, zero = A.prod, A.imp, A.leq, A.one, A.zero
    for x in range(n):
        assert I[x, x] == one
        assert P[x, zero] == zero
        for y in range(n):
            assert leq[P[x, I[x, y]], y]
            assert (I[x, y] == one) == leq[x, y]
            assert leq[P[x, y], A.meet[x, y]]


@SETTINGS
@given(st.sampled_from(residuated_pool + [A for A in all_residuated(5)]))
def test_residuated_filters_by_subsets(A):
    n = A.size
    found = set()
    for mask in range(1, 1 << n):
        S = {x for x in range(n) if mask >> x & 1}
        if A.one not in S:
            continue
        up = all(y in S for x in S for y in range(n) if A.leq[x, y])
        closed = all(int(A.prod[x, y]) in S for x in S for y in S)
        if up and closed:
            found.add(frozenset(S))
    assert found == set(rl_filters(A))


@SETTINGS
@given(lattices(2, 6))
def test_quotient_transfer(L):
    alg = lattice_algebra(L)
    C = con(alg)
    has = algebra_has_cblp(C).holds
    every = all(algebra_has_cblp(con(quotient(alg, t).target)).holds for t in C.elements)
    assert has == every


def test_congruence_meet_join_are_lattice_ops():
    parts = [Congruence.from_labels(p) for p in oracles.rgs(4)]
    for a, b in combinations(parts, 2):
        m, j = a.meet(b), a.join(b)
        assert m.leq(a) and m.leq(b) and a.leq(j) and b.leq(j)
