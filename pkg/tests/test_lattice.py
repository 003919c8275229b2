import numpy as np
import pytest

from congrkit.algebra import con
from congrkit.catalog import boolean_lattice, chain, diamond, fixture, l2, lattice_e, lattice_z, pentagon
from congrkit.lattice import (FiniteLattice, LatticeError, NotDistributiveError, boolean_center,
                              dual, filter_congruence, filters, find_lattice_isomorphism,
                              format_lattice, has_filter_blp, has_ideal_blp, hasse_edges, id_local,
                              ideals, interval, is_b_normal, is_distributive, is_filter,
                              is_normal, isomorphic, lattice_blp, lattice_product,
                              lattice_profile, maximal_filters, maximal_ideals, normality_profile,
                              parse_lattice, prime_filters, prime_ideals, quotient_lattice, rad_id,
                              sublattice, to_dot)
from congrkit.partition import Congruence


def test_profiles_of_small_lattices():
    assert lattice_profile(diamond()).is_modular and not lattice_profile(diamond()).is_distributive
    p = lattice_profile(pentagon())
    assert not p.is_modular and not p.is_distributive
    b = lattice_profile(boolean_lattice(3))
    assert b.is_distributive and b.is_boolean
    assert not lattice_profile(chain(3)).is_boolean


def test_invalid_orders_rejected():
    with pytest.raises(LatticeError):
        FiniteLattice(np.array([[1, 1], [1, 1]], dtype=bool))
    # two maximal elements: no top
    with pytest.raises(LatticeError):
        FiniteLattice.from_covers(3, [(0, 1), (0, 2)])


def test_tables_checked():
    L = chain(3)
    join = L.join.copy()
    join[0, 1] = join[1, 0] = 2
    with pytest.raises(LatticeError):
        FiniteLattice(L.leq, join, L.meet)


def test_boolean_center_of_chain_and_diamond():
    assert boolean_center(chain(4)).elements == (0, 3)
    bc = boolean_center(diamond())
    assert len(bc.elements) == 5 and not bc.unique
    assert boolean_center(boolean_lattice(2)).unique


def test_normality_of_con_z():
    # derived from the 10-element Con(Z)
    conZ = con(fixture("lattice_z").algebra).lattice
    prof = normality_profile(conZ)
    assert not prof.b_normal and not prof.normal
    assert prof.conormal and prof.b_conormal


def test_normality_requires_distributive():
    with pytest.raises(NotDistributiveError):
        normality_profile(pentagon())


def test_chains_and_boolean_lattices_are_normal():
    for L in [chain(2), chain(5), boolean_lattice(3)]:
        assert is_normal(L) and is_b_normal(L)


def test_filters_and_ideals_of_distributive_lattice():
    L = boolean_lattice(2)
    assert len(filters(L)) == 4 and len(ideals(L)) == 4
    assert all(is_filter(L, F) for F in filters(L))
    assert not is_filter(L, {1, 2})
    assert len(prime_filters(L)) == 2 and len(prime_ideals(L)) == 2
    assert maximal_filters(L) == prime_filters(L)
    assert len(maximal_ideals(L)) == 2


def test_rad_id_and_id_local():
    assert id_local(chain(4))
    assert not id_local(boolean_lattice(2))
    C = chain(4)
    assert rad_id(C) == C.down(2)


def test_dual_and_interval():
    P = pentagon()
    D = dual(P)
    assert dual(D) == P
    assert D.bottom == P.top
    I = interval(P, P.index("y"))
    assert sorted(I.labels) == ["1", "y", "z"]
    assert is_distributive(I)


def test_sublattice_origin():
    P = pentagon()
    S = sublattice(P, [P.index(x) for x in "0xz1"])
    assert S.origin == tuple(P.index(x) for x in "0xz1")


def test_hasse_edges_of_pentagon():
    P = pentagon()
    names = {(P.labels[a], P.labels[b]) for a, b in hasse_edges(P)}
    assert names == {("0", "x"), ("0", "y"), ("y", "z"), ("x", "1"), ("z", "1")}
    assert P.heights() == [0, 1, 1, 2, 3]


def test_product_and_quotient_lattice():
    L = lattice_product(l2(), l2())
    assert isomorphic(L, boolean_lattice(2))
    P = pentagon()
    gamma = Congruence.from_classes(5, [[0], [1], [2, 3], [4]])
    assert isomorphic(quotient_lattice(P, gamma), boolean_lattice(2))


def test_filter_blp():
    C = chain(3)
    F = C.up(1)
    theta = filter_congruence(C, F)
    assert theta.related(1, 2) and not theta.related(0, 1)
    holds, _ = lattice_blp(C, theta)
    assert holds
    assert has_filter_blp(chain(4)) and has_ideal_blp(chain(4))


def test_text_format_round_trip():
    for L in [pentagon(), lattice_e(), lattice_z(), boolean_lattice(3)]:
        M = parse_lattice(format_lattice(L))
        assert M == L and M.labels == L.labels


def test_parse_errors():
    with pytest.raises(LatticeError):
        parse_lattice("lattice bad\nsize 2\ncovers 0<1 1<0\n")


def test_isomorphism_search():
    f = find_lattice_isomorphism(dual(pentagon()), pentagon())
    assert f is not None
    assert find_lattice_isomorphism(diamond(), pentagon()) is None


def test_dot_is_deterministic():
    a = to_dot(lattice_z())
    assert a == to_dot(lattice_z())
    assert a.startswith('digraph "lattice_z"') and "rankdir=BT" in a
    assert a.count("->") == len(hasse_edges(lattice_z()))
