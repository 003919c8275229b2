import pytest

import oracles
from congrkit.partition import Congruence, UnionFind, canonical, set_partitions


def test_union_find_merges_and_labels():
    uf = UnionFind(5)
    assert uf.union(3, 4)
    assert not uf.union(4, 3)
    uf.union(0, 4)
    assert uf.find(0) == uf.find(3)
    assert canonical(uf.labels()) == (0, 1, 2, 0, 0)


def test_canonical_first_occurrence():
    assert canonical([7, 7, 2, 9, 2]) == (0, 0, 1, 2, 1)


def test_non_canonical_blocks_rejected():
    with pytest.raises(ValueError):
        Congruence((1, 0))


def test_constructors_agree():
    a = Congruence.from_classes(4, [[0, 2], [1], [3]])
    b = Congruence.from_pairs(4, [(2, 0)])
    c = Congruence.from_labels([5, 6, 5, 8])
    assert a == b == c
    assert a.num_blocks == 3 and a.size == 4
    assert a.related(0, 2) and not a.related(0, 1)
    assert Congruence.identity(3).is_identity() and Congruence.full(3).is_full()


def test_format_uses_labels():
    t = Congruence.from_classes(3, [[1, 2], [0]])
    assert t.format(["0", "a", "1"]) == "eq({0},{a,1})"
    assert t.as_lists(["0", "a", "1"]) == [["0"], ["a", "1"]]


def test_set_partitions_bell_numbers():
    assert [sum(1 for _ in set_partitions(n)) for n in range(1, 8)] == [1, 2, 5, 15, 52, 203, 877]


def test_meet_join_leq_match_relations():
    parts = [Congruence(p) for p in set_partitions(4)]
    for p in parts[::3]:
        for q in parts[::2]:
            rp, rq = oracles.to_relation(p), oracles.to_relation(q)
            assert oracles.to_relation(p.meet(q)) == rp & rq
            assert oracles.to_relation(p.join(q)) == oracles.join(rp, rq)
            assert p.leq(q) == (rp <= rq)
