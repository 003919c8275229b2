import random

import pytest

from congrkit.algebra import AlgebraError, con, lattice_algebra, parse_algebra
from congrkit.catalog import (all_lattices, all_residuated, boolean_lattice, chain,
                              distributive_lattices, export, fixture, fixture_keys, l2,
                              lattice_z, ordinal_sum, ordinal_sum_congruence, pentagon,
                              random_algebras, random_lattice, standard_corpus)
from congrkit.cblp import algebra_has_cblp, boolean_congruences, has_cblp, is_local
from congrkit.lattice import isomorphic
from congrkit.reslat import algebra_has_blp, boolean_center_rl, classify, validate_residuated


def compute(f, name):
    """Recompute one expected fact of a fixture from scratch."""
    alg = f.algebra
    C = con(alg)
    if name == "congruence_count":
        return len(C)
    if name == "congruences":
        return set(C.elements)
    if name == "boolean_congruences":
        return {C[i] for i in boolean_congruences(C)}
    if name == "cblp":
        return algebra_has_cblp(C).holds
    if name == "cblp_failures":
        return {C[i] for i in algebra_has_cblp(C).failing}
    if name == "interval_alpha":
        a = C.find(f.named["alpha"])
        return {C[j] for j in range(len(C)) if C.le(a, j)}
    if name == "zeta4_cblp":
        return has_cblp(C, C.find(f.named["zeta4"])).holds
    if name == "local":
        return is_local(C)
    A = validate_residuated(alg)
    if name == "valid":
        return True
    if name == "blp_failures":
        return set(algebra_has_blp(A).failing)
    if name == "is_godel":
        return classify(A).is_godel
    if name == "is_bl":
        return classify(A).is_bl
    if name == "boolean_center":
        return boolean_center_rl(A)
    raise AssertionError(f"no checker for {name}")


@pytest.mark.parametrize("key", fixture_keys() + ["chain_2", "chain_5", "boolean_3"])
def test_fixture_facts(key):
    f = fixture(key)
    assert f.expected
    for name, fact in f.expected.items():
        assert compute(f, name) == fact.value, (key, name, fact.anchor)


def test_unknown_fixture():
    with pytest.raises(KeyError):
        fixture("heptagon")


def test_lattice_counts():
    assert [len(all_lattices(n)) for n in range(1, 8)] == [1, 1, 1, 2, 5, 15, 53]
    assert [len(distributive_lattices(n)) for n in range(1, 8)] == [1, 1, 1, 2, 3, 5, 8]


def test_enumerated_lattices_pairwise_non_isomorphic():
    Ls = all_lattices(6)
    for i in range(len(Ls)):
        for j in range(i + 1, len(Ls)):
            assert not isomorphic(Ls[i], Ls[j])


def test_residuated_counts():
    # frozen from the first run; the unpruned search in test_reslat checks n <= 4
    assert [len(all_residuated(n)) for n in range(1, 6)] == [1, 1, 2, 7, 27]


def test_random_lattices_deterministic():
    a = [random_lattice(6, random.Random(5)) for _ in range(3)]
    b = [random_lattice(6, random.Random(5)) for _ in range(3)]
    assert a == b
    assert [x.table("meet").tobytes() for x in random_algebras("lattice", 5, 4, seed=9)] == \
           [x.table("meet").tobytes() for x in random_algebras("lattice", 5, 4, seed=9)]


def test_random_algebras_signatures():
    algs = random_algebras([("f", 1), ("g", 2)], 3, 5, seed=1)
    assert len(algs) == 5 and all(a.signature == (("f", 1), ("g", 2)) for a in algs)
    assert len(random_algebras("residuated", 4, "all")) == 7
    with pytest.raises(AlgebraError):
        random_algebras("lattice", 9, 1)


def test_export_round_trip():
    for key in fixture_keys():
        text = export(key)
        assert parse_algebra(text) == fixture(key).algebra


def test_ordinal_sum_congruences():
    # Con(L + M) = {φ + ψ}
    for L, M in [(pentagon(), l2()), (chain(3), boolean_lattice(2)), (boolean_lattice(2), pentagon())]:
        S = ordinal_sum(L, M)
        cs = set(con(lattice_algebra(S)).elements)
        built = {ordinal_sum_congruence(p, q, L, M)
                 for p in con(lattice_algebra(L)).elements for q in con(lattice_algebra(M)).elements}
        assert cs == built
        assert len(cs) == len(con(lattice_algebra(L))) * len(con(lattice_algebra(M)))


def test_ordinal_sums_containing_pentagon_lack_cblp():
    for M in [l2(), chain(3), boolean_lattice(2)]:
        for S in [ordinal_sum(pentagon(), M), ordinal_sum(M, pentagon())]:
            assert not algebra_has_cblp(con(lattice_algebra(S))).holds
    assert isomorphic(lattice_z(), ordinal_sum(pentagon(), l2()))


def test_standard_corpus_shape():
    corpus = standard_corpus(seed=0, random_count=10)
    kinds = {k for _, k in corpus}
    assert kinds == {"lattice", "residuated"}
    assert all(a.size <= 8 for a, _ in corpus)
