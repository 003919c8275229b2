"""Named example algebras, ordinal sums, and generators for test corpora."""
from __future__ import annotations

import random
import re
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import permutations

import numpy as np

from .algebra import (AlgebraError, FiniteAlgebra, format_algebra,
                      lattice_algebra, make_algebra)
from .lattice import FiniteLattice, LatticeError, is_distributive
from .partition import Congruence, UnionFind
from .reslat import ResiduatedLattice, make_residuated, residuated_structures


@dataclass(frozen=True)
class Fact:
    value: object
    anchor: str


@dataclass
class Fixture:
    key: str
    algebra: FiniteAlgebra
    kind: str                                   # "lattice" or "residuated"
    expected: dict = field(default_factory=dict)  # name -> Fact
    named: dict = field(default_factory=dict)     # name -> Congruence
    note: str = ""

    @property
    def residuated(self) -> ResiduatedLattice:
        from .reslat import validate_residuated
        return validate_residuated(self.algebra)


# ---------------------------------------------------------------------------
# lattices

def l2() -> FiniteLattice:
    return FiniteLattice.chain(2, name="L2")


def chain(n: int) -> FiniteLattice:
    return FiniteLattice.chain(n)


def boolean_lattice(k: int) -> FiniteLattice:
    n = 2 ** k
    x = np.arange(n)
    leq = (x[:, None] & ~x[None, :]) == 0
    labels = [format(i, f"0{k}b") if k else "0" for i in range(n)]
    return FiniteLattice(leq, x[:, None] | x[None, :], x[:, None] & x[None, :], labels=labels,
                         name=f"boolean_{k}")


def diamond() -> FiniteLattice:
    return FiniteLattice.from_covers(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
                                     labels="0 a b c 1".split(), name="diamond")


def pentagon() -> FiniteLattice:
    # 0 < x < 1 and 0 < y < z < 1
    return FiniteLattice.from_covers(5, [(0, 1), (0, 2), (2, 3), (1, 4), (3, 4)],
                                     labels="0 x y z 1".split(), name="pentagon")


def lattice_e() -> FiniteLattice:
    # the pentagon 0 < b < d < 1, 0 < a < 1 plus a further atom c below 1
    return FiniteLattice.from_covers(6, [(0, 1), (0, 2), (2, 4), (0, 3), (1, 5), (3, 5), (4, 5)],
                                     labels="0 a b c d 1".split(), name="lattice_e")


def ordinal_sum(L: FiniteLattice, M: FiniteLattice, labels=None, name=None) -> FiniteLattice:
    """Stack M on top of L, identifying the top of L with the bottom of M.
    Elements of L keep their indices; the other elements of M follow in order."""
    nL, nM = L.size, M.size
    in_l, in_m = ordinal_sum_embeddings(L, M)
    n = nL + nM - 1
    leq = np.zeros((n, n), dtype=bool)
    leq[np.ix_(in_l, in_l)] = L.leq
    leq[np.ix_(in_m, in_m)] |= M.leq
    leq[np.ix_(in_l, in_m)] = True
    if labels is None:
        labels = list(L.labels)
        for j in range(nM):
            if j != M.bottom:
                lab = M.labels[j]
                while lab in labels:
                    lab += "'"
                labels.append(lab)
    return FiniteLattice(leq, labels=labels, name=name or f"{L.name}+{M.name}")


def ordinal_sum_embeddings(L: FiniteLattice, M: FiniteLattice):
    in_l = list(range(L.size))
    in_m, nxt = [], L.size
    for j in range(M.size):
        if j == M.bottom:
            in_m.append(L.top)
        else:
            in_m.append(nxt)
            nxt += 1
    return in_l, in_m


def ordinal_sum_congruence(phi: Congruence, psi: Congruence, L: FiniteLattice,
                           M: FiniteLattice) -> Congruence:
    """φ ∔ ψ: the classes of φ and ψ, with the two classes of the shared
    element merged."""
    in_l, in_m = ordinal_sum_embeddings(L, M)
    uf = UnionFind(L.size + M.size - 1)
    for part, emb in ((phi, in_l), (psi, in_m)):
        for c in part.classes():
            for x in c[1:]:
                uf.union(emb[c[0]], emb[x])
    return Congruence.from_labels(uf.labels())


def lattice_z() -> FiniteLattice:
    return ordinal_sum(pentagon(), l2(), labels="0 x y z u 1".split(), name="lattice_z")


# ---------------------------------------------------------------------------
# fixtures

def _eq(L, *classes) -> Congruence:
    return Congruence.from_classes(L.size, [[L.index(x) for x in c] for c in classes])


def residuated_a() -> ResiduatedLattice:
    """Five elements 0 < a, b < c < 1 with a, b incomparable, prod = meet.

    The implication is entered as a table and checked by validation.  A
    six-element carrier is sometimes quoted for this example, but its table
    and Hasse diagram have five elements; this fixture follows those."""
    L = FiniteLattice.from_covers(5, [(0, 1), (0, 2), (1, 3), (2, 3), (3, 4)],
                                  labels="0 a b c 1".split(), name="residuated_a")
    imp = [["1", "1", "1", "1", "1"],
           ["b", "1", "b", "1", "1"],
           ["a", "a", "1", "1", "1"],
           ["0", "a", "b", "1", "1"],
           ["0", "a", "b", "c", "1"]]
    imp = [[L.index(v) for v in row] for row in imp]
    return make_residuated("residuated_a", L, L.meet, imp)


def boolean_residuated(k: int) -> ResiduatedLattice:
    from .reslat import godel_algebra
    return godel_algebra(boolean_lattice(k), name=f"boolean_{k}_rl")


def _lattice_fixture(key, L, expected=None, named=None, note=""):
    return Fixture(key, lattice_algebra(L, key), "lattice", expected or {}, named or {}, note)


def _fixture_diamond():
    L = diamond()
    return _lattice_fixture("diamond", L, {
        "congruence_count": Fact(2, "diamond: only the trivial congruences"),
        "cblp": Fact(True, "diamond has CBLP"),
    })


def _fixture_pentagon():
    L = pentagon()
    named = {
        "alpha": _eq(L, "0yz", "x1"),
        "beta": _eq(L, "0x", "yz1"),
        "gamma": _eq(L, "0", "x", "yz", "1"),
    }
    d, n = Congruence.identity(5), Congruence.full(5)
    return _lattice_fixture("pentagon", L, {
        "congruence_count": Fact(5, "pentagon: Con = {Δ, α, β, γ, ∇}"),
        "congruences": Fact({d, n, *named.values()}, "pentagon: Con = {Δ, α, β, γ, ∇}"),
        "boolean_congruences": Fact({d, n}, "pentagon: B(Con) = {Δ, ∇}"),
        "cblp": Fact(False, "pentagon lacks CBLP"),
        "cblp_failures": Fact({named["gamma"]}, "pentagon: γ is the congruence without CBLP"),
        "interval_alpha": Fact({named["alpha"], n}, "pentagon: [α) = {α, ∇}"),
    }, named)


def _fixture_e():
    L = lattice_e()
    named = {"epsilon": _eq(L, "0", "a", "bd", "c", "1")}
    return _lattice_fixture("lattice_e", L, {
        "congruence_count": Fact(3, "lattice E: Con = {Δ, ε, ∇}"),
        "congruences": Fact({Congruence.identity(6), named["epsilon"], Congruence.full(6)},
                            "lattice E: Con = {Δ, ε, ∇}"),
        "cblp": Fact(True, "lattice E has CBLP"),
    }, named)


def _fixture_z():
    L = lattice_z()
    named = {
        "zeta1": _eq(L, "0xyzu", "1"),
        "zeta2": _eq(L, "0", "x", "y", "z", "u1"),
        "zeta3": _eq(L, "0", "x", "yz", "u", "1"),
        "zeta4": _eq(L, "0", "x", "yz", "u1"),
        "zeta5": _eq(L, "0yz", "xu", "1"),
        "zeta6": _eq(L, "0x", "yzu", "1"),
        "zeta7": _eq(L, "0yz", "xu1"),
        "zeta8": _eq(L, "0x", "yzu1"),
    }
    d, n = Congruence.identity(6), Congruence.full(6)
    return _lattice_fixture("lattice_z", L, {
        "congruence_count": Fact(10, "lattice Z = pentagon + L2: Con = {Δ, ζ1..ζ8, ∇}"),
        "congruences": Fact({d, n, *named.values()}, "lattice Z: Con = {Δ, ζ1..ζ8, ∇}"),
        "boolean_congruences": Fact({d, named["zeta1"], named["zeta2"], n},
                                    "lattice Z: B(Con) = {Δ, ζ1, ζ2, ∇}"),
        "cblp": Fact(False, "lattice Z lacks CBLP"),
        "zeta4_cblp": Fact(False, "lattice Z: ζ4 lacks CBLP"),
    }, named)


def _fixture_residuated_a():
    A = residuated_a()
    return Fixture("residuated_a", A.base, "residuated", {
        "valid": Fact(True, "residuated example validates with prod = meet"),
        "blp_failures": Fact({frozenset(A.element(x) for x in "c1")},
                             "residuated example: the filter [c) is the only one without BLP"),
        "is_godel": Fact(True, "residuated example has prod = meet"),
        "is_bl": Fact(False, "residuated example is not a BL-algebra"),
        "boolean_center": Fact(frozenset({0, 4}), "residuated example: B(A) = {0, 1}"),
    }, note=residuated_a.__doc__)


_PARAM = re.compile(r"^(chain|boolean)_(\d+)$")


def fixture_keys() -> list:
    return ["diamond", "pentagon", "lattice_e", "lattice_z", "residuated_a", "l2",
            "chain_n", "boolean_k"]


def fixture(key: str) -> Fixture:
    """Catalog fixture by key.  ``chain_n`` and ``boolean_k`` also accept a
    number in place of the letter, e.g. ``chain_4`` or ``boolean_3``."""
    fixed = {"diamond": _fixture_diamond, "pentagon": _fixture_pentagon,
             "lattice_e": _fixture_e, "lattice_z": _fixture_z,
             "residuated_a": _fixture_residuated_a}
    if key in fixed:
        return fixed[key]()
    if key == "l2":
        return _lattice_fixture("l2", l2(), {"congruence_count": Fact(2, "two-element chain"),
                                             "cblp": Fact(True, "distributive lattice")})
    if key == "chain_n":
        key = "chain_3"
    if key == "boolean_k":
        key = "boolean_2"
    m = _PARAM.match(key)
    if m:
        kind, k = m.group(1), int(m.group(2))
        if kind == "chain":
            if k < 1:
                raise KeyError(key)
            L = chain(k)
            return _lattice_fixture(key, L, {
                "congruence_count": Fact(2 ** (k - 1), "congruences of a chain: any set of cut points"),
                "cblp": Fact(True, "distributive lattice"),
                "local": Fact(k == 2, "Con of a k-chain is Boolean with k-1 atoms, so k-1 maximal congruences")})
        L = boolean_lattice(k)
        return _lattice_fixture(key, L, {
            "congruence_count": Fact(2 ** k, "Con of a Boolean lattice is Boolean with k atoms"),
            "cblp": Fact(True, "distributive lattice")})
    raise KeyError(f"unknown fixture {key!r}")


def export(key: str) -> str:
    return format_algebra(fixture(key).algebra)


# ---------------------------------------------------------------------------
# enumeration of small lattices

def _canonical_leq(leq: np.ndarray) -> bytes:
    n = leq.shape[0]
    mid = list(range(1, n - 1))
    best = None
    for perm in permutations(mid):
        order = [0, *perm, n - 1]
        key = leq[np.ix_(order, order)].tobytes()
        if best is None or key < best:
            best = key
    return best


@lru_cache(maxsize=None)
def _all_lattices(n: int) -> tuple:
    if n > 8:
        raise AlgebraError("lattice enumeration is limited to size 8")
    if n == 1:
        return (FiniteLattice(np.ones((1, 1), dtype=bool), name="L1"),)
    m = n - 2
    slots = [(i, j) for i in range(m) for j in range(i + 1, m)]
    seen, out = set(), []
    for mask in range(2 ** len(slots)):
        rel = np.eye(m, dtype=bool)
        for b, (i, j) in enumerate(slots):
            if mask >> b & 1:
                rel[i, j] = True
        closed = rel.copy()
        for k in range(m):
            closed |= closed[:, [k]] & closed[[k], :]
        if (closed != rel).any():
            continue  # each order counted once, by its transitively closed form
        leq = np.zeros((n, n), dtype=bool)
        leq[0, :] = True
        leq[:, n - 1] = True
        leq[1:n - 1, 1:n - 1] = rel
        try:
            L = FiniteLattice(leq)
        except LatticeError:
            continue
        key = _canonical_leq(leq)
        if key not in seen:
            seen.add(key)
            out.append(L)
    for i, L in enumerate(out):
        L.name = f"lat{n}_{i}"
    return tuple(out)


def all_lattices(n: int) -> list:
    """Every lattice with n elements, one per isomorphism class."""
    return list(_all_lattices(n))


def distributive_lattices(n: int) -> list:
    return [L for L in all_lattices(n) if is_distributive(L)]


@lru_cache(maxsize=None)
def _all_residuated(n: int) -> tuple:
    out = []
    for i, L in enumerate(all_lattices(n)):
        out += residuated_structures(L, name=f"rl{n}_{i}_")
    return tuple(out)


def all_residuated(n: int) -> list:
    """Every residuated lattice with n elements (up to isomorphism of the
    underlying lattice; different products on the same lattice are kept)."""
    return list(_all_residuated(n))


# ---------------------------------------------------------------------------
# random generators

def random_lattice(n: int, rng: random.Random, name="L") -> FiniteLattice:
    if n == 1:
        return FiniteLattice(np.ones((1, 1), dtype=bool), name=name)
    while True:
        m = n - 2
        p = rng.random()
        leq = np.zeros((n, n), dtype=bool)
        leq[0, :] = True
        leq[:, n - 1] = True
        for i in range(1, n - 1):
            leq[i, i] = True
            for j in range(i + 1, n - 1):
                leq[i, j] = rng.random() < p
        for k in range(n):
            leq |= leq[:, [k]] & leq[[k], :]
        try:
            FiniteLattice(leq, name=name)
        except LatticeError:
            continue
        # shuffle the middle so labels carry no order information
        perm = [0] + rng.sample(range(1, n - 1), m) + [n - 1]
        return FiniteLattice(leq[np.ix_(perm, perm)], name=name)


def random_algebras(signature, size: int, count, seed: int = 0) -> list:
    """Seeded random algebras.

    signature: "lattice", "residuated", or a list of (op name, arity).
    count: a number, or "all" for residuated lattices (every one of that size).
    """
    rng = random.Random(seed)
    if signature == "lattice":
        if not 1 <= size <= 6:
            raise AlgebraError("random lattices are limited to sizes 1..6")
        return [lattice_algebra(random_lattice(size, rng, name=f"rlat{size}_{seed}_{i}"))
                for i in range(count)]
    if signature == "residuated":
        if not 1 <= size <= 5:
            raise AlgebraError("random residuated lattices are limited to sizes 1..5")
        pool = [A.base for A in all_residuated(size)]
        if count == "all":
            return pool
        return [rng.choice(pool) for _ in range(count)]
    out = []
    for i in range(count):
        ops = {}
        for name, arity in signature:
            ops[name] = (arity, [rng.randrange(size) for _ in range(size ** arity)])
        out.append(make_algebra(f"rand{size}_{seed}_{i}", size, ops))
    return out


# ---------------------------------------------------------------------------
# corpus used by the acceptance suite and the sweep script

def catalog_lattices() -> list:
    keys = ["diamond", "pentagon", "lattice_e", "lattice_z", "l2", "chain_3", "chain_4",
            "boolean_2", "boolean_3"]
    return [fixture(k).algebra for k in keys]


def catalog_residuated() -> list:
    return [fixture("residuated_a").algebra, boolean_residuated(1).base,
            boolean_residuated(2).base]


def standard_corpus(seed: int = 0, random_count: int = 200) -> list:
    """(algebra, kind) pairs: catalog fixtures, every lattice of size <= 6,
    seeded random lattices of size <= 6, and every residuated lattice of
    size <= 4."""
    out = [(a, "lattice") for a in catalog_lattices()]
    out += [(a, "residuated") for a in catalog_residuated()]
    for n in range(1, 7):
        out += [(lattice_algebra(L), "lattice") for L in all_lattices(n)]
    rng = random.Random(seed)
    for i in range(random_count):
        n = rng.randint(2, 6)
        L = random_lattice(n, rng, name=f"random{i}_n{n}")
        out.append((lattice_algebra(L), "lattice"))
    for n in range(1, 5):
        out += [(A.base, "residuated") for A in all_residuated(n)]
    return out
