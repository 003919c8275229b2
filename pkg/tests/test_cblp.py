import json

import pytest

import oracles
from congrkit.algebra import (AlgebraError, cg, con, is_isomorphic, lattice_algebra, make_algebra,
                              product)
from congrkit.catalog import chain, fixture, l2
from congrkit.cblp import (NotArithmeticalError, algebra_has_cblp, boolean_congruences,
                           cblp_equivalents, cblp_report, compact_congruences, has_cblp,
                           is_local, is_semilocal, lifting_maps, satisfies_star,
                           semilocal_decompose, spec_topology, spectra)

KEYS = ["diamond", "pentagon", "lattice_e", "lattice_z", "l2", "chain_3", "boolean_2",
        "residuated_a"]


def _relations(C, idx):
    return {oracles.to_relation(C[i]) for i in idx}


@pytest.mark.parametrize("key", KEYS)
def test_spectra_match_relation_oracle(key):
    alg = fixture(key).algebra
    C = con(alg)
    congs = oracles.congruences(alg)
    n = alg.size
    sp = spectra(C)
    assert _relations(C, sp.spec) == set(oracles.prime(congs, n))
    assert _relations(C, sp.max) == set(oracles.maximal(congs, n))
    assert oracles.to_relation(C[sp.rad]) == oracles.radical(congs, n)
    assert _relations(C, boolean_congruences(C)) == set(oracles.booleans(congs, n))


@pytest.mark.parametrize("key", KEYS)
def test_cblp_and_star_match_relation_oracle(key):
    alg = fixture(key).algebra
    C = con(alg)
    congs = oracles.congruences(alg)
    rep = algebra_has_cblp(C)
    assert _relations(C, rep.failing) == set(oracles.cblp_failures(congs, alg.size))
    assert satisfies_star(C).holds == oracles.star(congs, alg.size)


def test_pentagon_report():
    C = con(fixture("pentagon").algebra)
    gamma = C.find(fixture("pentagon").named["gamma"])
    v = has_cblp(C, gamma)
    assert not v.holds and v.witness is not None
    # [γ) is {γ, α, β, ∇}: a four-element Boolean interval
    assert len(v.boolean_interval) == 4 and len(v.image) == 2
    assert not satisfies_star(C).holds


def test_top_interval_is_trivial():
    C = con(fixture("lattice_z").algebra)
    m = lifting_maps(C, C.top_index)
    assert m.interval.size == 1


@pytest.mark.parametrize("key", KEYS)
def test_lifting_maps_commute(key):
    C = con(fixture(key).algebra)
    for t in range(len(C)):
        m = lifting_maps(C, t)
        assert m.s_iso and m.triangle
        assert has_cblp(C, t).holds == (set(m.u_boolean_image) == set(m.quotient_boolean))


def test_primes_and_maximals_have_cblp():
    for key in KEYS:
        C = con(fixture(key).algebra)
        sp = spectra(C)
        assert all(has_cblp(C, p).holds for p in sp.spec)


def test_booleans_are_generated_by_finite_pair_sets():
    for key in KEYS:
        alg = fixture(key).algebra
        C = con(alg)
        for b in boolean_congruences(C):
            assert cg(alg, C[b].pairs()) == C[b]
        assert compact_congruences(C) == set(range(len(C)))


def test_locality():
    assert is_local(con(fixture("diamond").algebra))
    assert is_local(con(fixture("lattice_e").algebra))
    assert not is_local(con(fixture("chain_3").algebra))
    assert not is_local(con(fixture("boolean_2").algebra))
    trivial = lattice_algebra(chain(1))
    assert spectra(con(trivial)).max == () and not is_local(con(trivial))
    assert is_semilocal(con(fixture("lattice_z").algebra))


@pytest.mark.parametrize("key,value", [("diamond", True), ("lattice_e", True),
                                        ("pentagon", False), ("lattice_z", False),
                                        ("boolean_2", True), ("chain_3", True)])
def test_six_way(key, value):
    eq = cblp_equivalents(con(fixture(key).algebra))
    assert eq.values() == [value] * 6


def test_spec_topology_clopens():
    for key in KEYS:
        t = spec_topology(con(fixture(key).algebra))
        assert t.clopens == t.clopens_topological


def test_decompose_boolean_square():
    alg = fixture("boolean_2").algebra
    d = semilocal_decompose(alg)
    assert d.ok and d.verified and len(d.factors) == 2
    assert all(is_isomorphic(q.target, lattice_algebra(l2())) for q in d.factors)


def test_decompose_local_is_single_factor():
    d = semilocal_decompose(fixture("lattice_e").algebra)
    assert d.ok and len(d.factors) == 1 and d.factors[0].target.size == 6


def test_decompose_pentagon_fails_at_gamma():
    C = con(fixture("pentagon").algebra)
    d = semilocal_decompose(fixture("pentagon").algebra, C)
    assert not d.ok and C[d.failing] == fixture("pentagon").named["gamma"]


def test_decompose_errors():
    with pytest.raises(NotArithmeticalError):
        semilocal_decompose(fixture("chain_3").algebra)
    with pytest.raises(AlgebraError):
        semilocal_decompose(lattice_algebra(chain(1)))


def test_decompose_residuated_product():
    A = fixture("residuated_a").algebra
    B = make_algebra("two", 2, {k: v for k, v in {
        "join": [[0, 1], [1, 1]], "meet": [[0, 0], [0, 1]], "prod": [[0, 0], [0, 1]],
        "imp": [[1, 1], [0, 1]], "zero": [0], "one": [1]}.items()})
    P, _ = product([A, B])
    d = semilocal_decompose(P)
    assert not d.ok  # A lacks CBLP, so the product does too


def test_report_is_json_serialisable_and_deterministic():
    C = con(fixture("lattice_z").algebra)
    a = json.dumps(cblp_report(C, decompose=True))
    b = json.dumps(cblp_report(con(fixture("lattice_z").algebra), decompose=True))
    assert a == b
    rep = json.loads(a)
    assert set(rep) >= {"algebra", "cblp", "star", "spec", "max", "rad", "per_congruence",
                        "equivalents", "decomposition"}
    assert rep["cblp"] is False
    assert sum(not r["cblp"] for r in rep["per_congruence"]) == 2


def test_local_algebras_have_cblp_and_id_local_con(corpus):
    from congrkit.lattice import id_local
    for a, _, C in corpus:
        if is_local(C):
            assert algebra_has_cblp(C).holds, a.name
            assert id_local(C.lattice), a.name
