"""Finite algebras, their congruences, quotients and direct products."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

import numpy as np

from . import config
from .lattice import FiniteLattice, is_distributive
from .partition import Congruence, UnionFind, set_partitions


class AlgebraError(ValueError):
    pass


class OracleInapplicable(AlgebraError):
    pass


class IncompatibleSystemError(AlgebraError):
    pass


@dataclass(frozen=True)
class Operation:
    name: str
    arity: int
    table: tuple  # row-major, length size**arity

    def array(self, n: int) -> np.ndarray:
        return np.array(self.table, dtype=np.int64).reshape((n,) * self.arity)


@dataclass(frozen=True)
class FiniteAlgebra:
    name: str
    size: int
    ops: tuple
    element_names: tuple | None = None

    @property
    def labels(self) -> list[str]:
        if self.element_names:
            return list(self.element_names)
        return [str(i) for i in range(self.size)]

    @property
    def signature(self) -> tuple:
        return tuple((op.name, op.arity) for op in self.ops)

    def op(self, name: str) -> Operation:
        for op in self.ops:
            if op.name == name:
                return op
        raise KeyError(name)

    def has_op(self, name: str) -> bool:
        return any(op.name == name for op in self.ops)

    @cached_property
    def tables(self) -> dict:
        return {op.name: op.array(self.size) for op in self.ops}

    def table(self, name: str) -> np.ndarray:
        return self.tables[name]

    def element(self, x) -> int:
        """Index of an element given as index or label."""
        if isinstance(x, (int, np.integer)):
            if not 0 <= x < self.size:
                raise AlgebraError(f"element {x} out of range")
            return int(x)
        labels = self.labels
        if x in labels:
            return labels.index(x)
        try:
            return self.element(int(x))
        except ValueError:
            raise AlgebraError(f"unknown element {x!r}") from None

    @cached_property
    def translations(self) -> np.ndarray:
        """Row a lists f(c1..a..ck) for every operation f, every argument
        position and every choice of the other arguments."""
        n = self.size
        cols = [np.zeros((n, 0), dtype=np.int64)]
        for op in self.ops:
            if op.arity == 0:
                continue
            T = self.tables[op.name]
            for i in range(op.arity):
                cols.append(np.moveaxis(T, i, 0).reshape(n, -1))
        return np.ascontiguousarray(np.concatenate(cols, axis=1))

    def __repr__(self):
        return f"FiniteAlgebra({self.name!r}, size={self.size}, ops={[o.name for o in self.ops]})"


# ---------------------------------------------------------------------------
# construction and validation

def validate_algebra(raw: dict) -> FiniteAlgebra:
    """raw: {"name", "size", "elements"?, "ops": [{"name", "arity", "table"}]}
    where table is a flat list of entries (indices or element names)."""
    n = raw.get("size")
    if n is None:
        raise AlgebraError("missing size")
    n = int(n)
    if n < 1:
        raise AlgebraError("size must be at least 1")
    names = raw.get("elements")
    if names is not None:
        names = tuple(str(x) for x in names)
        if len(names) != n:
            raise AlgebraError(f"{len(names)} element names for size {n}")
        if len(set(names)) != n:
            raise AlgebraError("duplicate element names")
    lookup = {name: i for i, name in enumerate(names)} if names else {}
    ops, seen = [], set()
    for spec in raw.get("ops", []):
        name, arity = spec["name"], int(spec["arity"])
        if name in seen:
            raise AlgebraError(f"duplicate op name {name!r}")
        seen.add(name)
        if arity < 0:
            raise AlgebraError(f"op {name!r}: negative arity")
        flat = list(np.asarray(spec["table"], dtype=object).ravel())
        if len(flat) != n ** arity:
            raise AlgebraError(f"op {name!r}: wrong table length {len(flat)}, expected {n ** arity}")
        entries = []
        for idx, x in enumerate(flat):
            if isinstance(x, str) and x in lookup:
                v = lookup[x]
            else:
                try:
                    v = int(x)
                except (TypeError, ValueError):
                    raise AlgebraError(f"op {name!r}: unknown element {x!r} at index {idx}") from None
            if not 0 <= v < n:
                raise AlgebraError(f"op {name!r}: entry out of range ({v}) at index {idx}")
            entries.append(v)
        ops.append(Operation(name, arity, tuple(entries)))
    return FiniteAlgebra(str(raw.get("name", "A")), n, tuple(ops), names)


def make_algebra(name: str, size: int, ops: dict, labels: Sequence[str] | None = None) -> FiniteAlgebra:
    """ops maps op name -> (arity, table) or just a table (arity from shape)."""
    specs = []
    for opname, val in ops.items():
        if isinstance(val, tuple) and len(val) == 2 and isinstance(val[0], int):
            arity, table = val
        else:
            table = np.asarray(val)
            arity = table.ndim
            if arity == 1 and table.shape == (1,) and size != 1:
                arity = 0
        specs.append({"name": opname, "arity": arity, "table": np.asarray(table, dtype=object).ravel()})
    return validate_algebra({"name": name, "size": size, "elements": labels, "ops": specs})


def lattice_algebra(L: FiniteLattice, name: str | None = None) -> FiniteAlgebra:
    return make_algebra(name or L.name or "L", L.size, {"join": L.join, "meet": L.meet}, L.labels)


def algebra_lattice(alg: FiniteAlgebra) -> FiniteLattice:
    """The lattice given by the join/meet operations of an algebra."""
    return FiniteLattice.from_tables(alg.table("join"), alg.table("meet"), labels=alg.labels,
                                     name=alg.name)


# ---------------------------------------------------------------------------
# text format

_KEYWORDS = ("algebra", "size", "elements", "op")


def parse_algebra(text: str) -> FiniteAlgebra:
    raw = {"ops": []}
    current = None
    for lineno, line in enumerate(text.splitlines(), 1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        key = words[0]
        if key == "algebra":
            raw["name"] = " ".join(words[1:]) or "A"
            current = None
        elif key == "size":
            try:
                raw["size"] = int(words[1])
            except (IndexError, ValueError):
                raise AlgebraError(f"line {lineno}: bad size line") from None
            current = None
        elif key == "elements":
            raw["elements"] = words[1:]
            current = None
        elif key == "op":
            if len(words) != 3:
                raise AlgebraError(f"line {lineno}: expected 'op NAME ARITY'")
            try:
                arity = int(words[2])
            except ValueError:
                raise AlgebraError(f"line {lineno}: bad arity {words[2]!r}") from None
            current = {"name": words[1], "arity": arity, "table": []}
            raw["ops"].append(current)
        elif current is not None:
            current["table"].extend(words)
        else:
            raise AlgebraError(f"line {lineno}: unexpected line {line!r}")
    return validate_algebra(raw)


def format_algebra(alg: FiniteAlgebra) -> str:
    n, labels = alg.size, alg.labels
    lines = [f"algebra {alg.name}", f"size {n}"]
    if alg.element_names:
        lines.append("elements " + " ".join(alg.element_names))
    width = max(len(s) for s in labels)
    for op in alg.ops:
        lines.append(f"op {op.name} {op.arity}")
        entries = [labels[v].ljust(width) for v in op.table]
        row = max(n, 1) if op.arity > 0 else 1
        for i in range(0, len(entries), row):
            lines.append(" ".join(entries[i:i + row]).rstrip())
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# congruence generation

def _check_pairs(alg, pairs):
    out = []
    for a, b in pairs:
        if not (0 <= a < alg.size and 0 <= b < alg.size):
            raise AlgebraError(f"pair ({a}, {b}) out of range for size {alg.size}")
        out.append((int(a), int(b)))
    return out


def cg(alg: FiniteAlgebra, pairs: Iterable[tuple[int, int]]) -> Congruence:
    """Least congruence containing the given pairs.

    Union-find on the seed pairs, then a worklist: each pair that caused a
    merge is pushed through every basic translation, and any pair of images
    lying in different classes is merged (and pushed) in turn.
    """
    n = alg.size
    trans = alg.translations
    uf = UnionFind(n)
    pending = [(a, b) for a, b in _check_pairs(alg, pairs) if uf.union(a, b)]
    while pending and trans.shape[1]:
        labels = np.array(uf.labels())
        P = np.array(pending)
        U = trans[P[:, 0]].ravel()
        V = trans[P[:, 1]].ravel()
        lu, lv = labels[U], labels[V]
        diff = lu != lv
        if not diff.any():
            break
        U, V, lu, lv = U[diff], V[diff], lu[diff], lv[diff]
        keys = np.minimum(lu, lv) * n + np.maximum(lu, lv)
        _, first = np.unique(keys, return_index=True)
        pending = []
        for k in first:
            u, v = int(U[k]), int(V[k])
            if uf.union(u, v):
                pending.append((u, v))
    return Congruence.from_labels(uf.labels())


def is_compatible(alg: FiniteAlgebra, theta: Congruence) -> bool:
    """Exhaustive compatibility test: every operation must induce a well
    defined function on blocks."""
    if theta.size != alg.size:
        return False
    lab = np.array(theta.blocks, dtype=np.int64)
    k_blocks = theta.num_blocks
    for op in alg.ops:
        if op.arity == 0:
            continue
        T = alg.tables[op.name]
        grids = np.indices(T.shape).reshape(op.arity, -1)
        keys = np.zeros(grids.shape[1], dtype=np.int64)
        for g in grids:
            keys = keys * k_blocks + lab[g]
        vals = lab[T.ravel()]
        order = np.argsort(keys, kind="stable")
        ks, vs = keys[order], vals[order]
        same = ks[1:] == ks[:-1]
        if (vs[1:][same] != vs[:-1][same]).any():
            return False
    return True


class CongruenceLattice:
    """Con(A) with order and lattice tables.

    Elements are sorted by decreasing number of blocks (then by block tuple),
    so Δ has index 0 and ∇ the last index.
    """

    def __init__(self, algebra: FiniteAlgebra, elements: Iterable[Congruence],
                 principal: dict | None = None):
        self.algebra = algebra
        self.elements = sorted(set(elements), key=lambda t: (-t.num_blocks, t.blocks))
        self.index = {t: i for i, t in enumerate(self.elements)}
        n = algebra.size
        self.bottom_index = self.index[Congruence.identity(n)]
        self.top_index = self.index[Congruence.full(n)]
        self.principal_index = {ab: self.index[t] for ab, t in (principal or {}).items()}
        self._tables()

    def _tables(self):
        c = len(self.elements)
        n = self.algebra.size
        labs = np.array([t.blocks for t in self.elements], dtype=np.int64).reshape(c, n)
        # relation matrices flattened: rel[t, a*n+b] = (a θ b)
        rel = (labs[:, :, None] == labs[:, None, :]).reshape(c, n * n).astype(np.float32)
        outside = 1.0 - rel
        self.leq = (rel @ outside.T) == 0  # θ ⊆ φ
        weight = rel.sum(axis=1)
        big = weight.max() + 1
        join = np.empty((c, c), dtype=np.int64)
        meet = np.empty((c, c), dtype=np.int64)
        leq = self.leq
        for x in range(c):
            ub = leq[x][None, :] & leq           # ub[y, z]: x<=z and y<=z
            join[x] = np.where(ub, weight[None, :], big).argmin(axis=1)
            lb = leq[:, x][None, :] & leq.T      # lb[y, z]: z<=x and z<=y
            meet[x] = np.where(lb, weight[None, :], -1).argmax(axis=1)
        self.join_table = join
        self.meet_table = meet
        self.weight = weight.astype(np.int64)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i) -> Congruence:
        return self.elements[i]

    def __iter__(self):
        return iter(self.elements)

    def find(self, theta: Congruence) -> int:
        try:
            return self.index[theta]
        except KeyError:
            raise AlgebraError(f"{theta.format()} is not a congruence of {self.algebra.name}") from None

    def principal(self, a, b) -> int:
        a, b = min(a, b), max(a, b)
        if a == b:
            return self.bottom_index
        return self.principal_index[(a, b)]

    def le(self, i, j) -> bool:
        return bool(self.leq[i, j])

    def label(self, i) -> str:
        return self.elements[i].format(self.algebra.labels)

    @cached_property
    def lattice(self) -> FiniteLattice:
        return FiniteLattice(self.leq, self.join_table, self.meet_table,
                             labels=[self.label(i) for i in range(len(self))],
                             name=f"Con({self.algebra.name})", check=False)


def principal_congruences(alg: FiniteAlgebra) -> dict:
    return {(a, b): cg(alg, [(a, b)]) for a, b in combinations(range(alg.size), 2)}


def con(alg: FiniteAlgebra) -> CongruenceLattice:
    """All congruences: the principal ones closed under joins."""
    principal = principal_congruences(alg)
    gens = sorted(set(principal.values()), key=lambda t: (len(t.pairs()), t.blocks))
    found = {Congruence.identity(alg.size)}
    for p in gens:
        if p in found:  # already a join of earlier generators
            continue
        found |= {x.join(p) for x in found}
    return CongruenceLattice(alg, found, principal)


def con_bruteforce(alg: FiniteAlgebra, cap: int | None = None) -> set:
    cap = config.limits().bruteforce_max if cap is None else cap
    if alg.size > cap:
        raise OracleInapplicable(f"brute force oracle capped at size {cap}, got {alg.size}")
    out = set()
    for word in set_partitions(alg.size):
        theta = Congruence(word)
        if is_compatible(alg, theta):
            out.add(theta)
    return out


def satisfies_h(conL: CongruenceLattice) -> bool:
    """∇ is a finite join of principal congruences."""
    found = {conL.bottom_index}
    for p in sorted(set(conL.principal_index.values())):
        found |= {int(conL.join_table[x, p]) for x in found}
    return conL.top_index in found


# ---------------------------------------------------------------------------
# quotients and products

@dataclass(frozen=True)
class QuotientMap:
    source: FiniteAlgebra
    theta: Congruence
    target: FiniteAlgebra
    projection: tuple

    def __call__(self, x: int) -> int:
        return self.projection[x]

    def image(self, theta: Congruence) -> Congruence:
        """φ/θ for a congruence φ containing θ (or the image of any
        equivalence, as the equivalence generated by projected pairs)."""
        return Congruence.from_pairs(self.target.size,
                                     ((self.projection[a], self.projection[b]) for a, b in theta.pairs()))

    def preimage(self, psi: Congruence) -> Congruence:
        return Congruence.from_labels(psi.blocks[p] for p in self.projection)


def quotient(alg: FiniteAlgebra, theta: Congruence, check: bool = True) -> QuotientMap:
    if check and not is_compatible(alg, theta):
        raise AlgebraError(f"{theta.format(alg.labels)} is not a congruence of {alg.name}")
    lab = np.array(theta.blocks, dtype=np.int64)
    reps = np.array(theta.representatives(), dtype=np.int64)
    ops = []
    for op in alg.ops:
        T = alg.tables[op.name]
        if op.arity == 0:
            new = lab[T].reshape(())
        else:
            new = lab[T[np.ix_(*[reps] * op.arity)]]
        ops.append(Operation(op.name, op.arity, tuple(int(v) for v in np.ravel(new))))
    labels = alg.labels
    names = tuple(labels[r] for r in reps)
    target = FiniteAlgebra(f"{alg.name}/{theta.format(labels)}", theta.num_blocks, tuple(ops),
                           names if alg.element_names else None)
    return QuotientMap(alg, theta, target, tuple(int(x) for x in lab))


@dataclass(frozen=True)
class ProductCodec:
    """Mixed-radix coding of tuples; factor 0 is the most significant digit."""

    sizes: tuple

    @property
    def size(self) -> int:
        return int(np.prod(self.sizes))

    def encode(self, coords: Sequence[int]) -> int:
        return int(np.ravel_multi_index(tuple(coords), self.sizes))

    def decode(self, x: int) -> tuple:
        return tuple(int(c) for c in np.unravel_index(x, self.sizes))

    def coordinates(self) -> np.ndarray:
        """Array of shape (len(sizes), size): coordinate i of each element."""
        return np.array(np.unravel_index(np.arange(self.size), self.sizes), dtype=np.int64).reshape(len(self.sizes), -1)


def product(factors: Sequence[FiniteAlgebra], name: str | None = None):
    """Direct product; returns (algebra, codec)."""
    if not factors:
        raise AlgebraError("product needs at least one factor")
    sig = factors[0].signature
    for f in factors[1:]:
        if f.signature != sig:
            raise AlgebraError(f"signature mismatch: {f.name} has {f.signature}, expected {sig}")
    codec = ProductCodec(tuple(f.size for f in factors))
    N = codec.size
    coords = codec.coordinates()
    ops = []
    for opname, arity in sig:
        if arity == 0:
            c = [int(f.tables[opname]) for f in factors]
            ops.append(Operation(opname, 0, (codec.encode(c),)))
            continue
        args = np.indices((N,) * arity).reshape(arity, -1)
        out_coords = []
        for i, f in enumerate(factors):
            T = f.tables[opname]
            out_coords.append(T[tuple(coords[i][a] for a in args)])
        flat = np.ravel_multi_index(tuple(out_coords), codec.sizes)
        ops.append(Operation(opname, arity, tuple(int(v) for v in flat)))
    names = None
    if any(f.element_names for f in factors):
        labs = [f.labels for f in factors]
        names = tuple("(" + ",".join(labs[i][c] for i, c in enumerate(codec.decode(x))) + ")"
                      for x in range(N))
    if name is None:
        name = "x".join(f.name for f in factors)
    return FiniteAlgebra(name, N, tuple(ops), names), codec


def product_congruence(thetas: Sequence[Congruence]) -> Congruence:
    codec = ProductCodec(tuple(t.size for t in thetas))
    coords = codec.coordinates()
    labs = [np.array(t.blocks, dtype=np.int64)[coords[i]] for i, t in enumerate(thetas)]
    ks = tuple(max(t.num_blocks, 1) for t in thetas)
    return Congruence.from_labels(np.ravel_multi_index(tuple(labs), ks))


def project_congruence(theta: Congruence, codec: ProductCodec, i: int) -> Congruence:
    if theta.size != codec.size:
        raise AlgebraError("congruence does not live on this product")
    coords = codec.coordinates()[i]
    uf = UnionFind(codec.sizes[i])
    for block in theta.classes():
        for x in block[1:]:
            uf.union(int(coords[block[0]]), int(coords[x]))
    return Congruence.from_labels(uf.labels())


# ---------------------------------------------------------------------------
# distributivity, permutability, CRT

def is_congruence_distributive(conL: CongruenceLattice) -> bool:
    return is_distributive(conL.lattice)


def _relation(theta: Congruence) -> np.ndarray:
    b = np.array(theta.blocks)
    return (b[:, None] == b[None, :]).astype(np.float32)


def is_congruence_permutable(alg: FiniteAlgebra, conL: CongruenceLattice | None = None) -> bool:
    conL = conL or con(alg)
    rels = [_relation(t) for t in conL]
    for i in range(len(rels)):
        for j in range(i + 1, len(rels)):
            if not ((rels[i] @ rels[j] > 0) == (rels[j] @ rels[i] > 0)).all():
                return False
    return True


def is_arithmetical(alg: FiniteAlgebra, conL: CongruenceLattice | None = None) -> bool:
    conL = conL or con(alg)
    return is_congruence_distributive(conL) and is_congruence_permutable(alg, conL)


def crt_solve(alg: FiniteAlgebra, thetas: Sequence[Congruence], targets: Sequence[int]):
    """Some a with a θ_i targets[i] for all i, or None.  Raises
    IncompatibleSystemError when (t_i, t_j) is not in θ_i ∨ θ_j."""
    if len(thetas) != len(targets):
        raise AlgebraError("need one target per congruence")
    targets = [alg.element(t) for t in targets]
    for i, j in combinations(range(len(thetas)), 2):
        if not thetas[i].join(thetas[j]).related(targets[i], targets[j]):
            raise IncompatibleSystemError(
                f"targets {targets[i]} and {targets[j]} are not related by the join of congruences {i} and {j}")
    for a in range(alg.size):
        if all(t.related(a, x) for t, x in zip(thetas, targets)):
            return a
    return None


# ---------------------------------------------------------------------------
# isomorphism

def _fingerprints(alg: FiniteAlgebra) -> list:
    n = alg.size
    prints = [[] for _ in range(n)]
    for op in alg.ops:
        T = alg.tables[op.name]
        counts = np.bincount(T.ravel(), minlength=n)
        for a in range(n):
            if op.arity == 0:
                prints[a].append(int(T) == a)
            elif op.arity == 1:
                prints[a] += [int(T[a]) == a, int(counts[a])]
            elif op.arity == 2:
                prints[a] += [int(T[a, a]) == a, int((T[a] == a).sum()), int((T[:, a] == a).sum()),
                              int(counts[a])]
            else:
                prints[a].append(int(counts[a]))
    return [tuple(p) for p in prints]


def is_homomorphism(A: FiniteAlgebra, B: FiniteAlgebra, mapping: Sequence[int]) -> bool:
    h = np.array(mapping, dtype=np.int64)
    for name, arity in A.signature:
        TA, TB = A.tables[name], B.tables[name]
        if arity == 0:
            if h[int(TA)] != int(TB):
                return False
        elif not (h[TA] == TB[np.ix_(*[h] * arity)]).all():
            return False
    return True


def find_isomorphism(A: FiniteAlgebra, B: FiniteAlgebra, cap: int | None = None):
    """A bijection A -> B preserving all operations, or None."""
    cap = config.limits().isomorphism_max if cap is None else cap
    if A.signature != B.signature or A.size != B.size:
        return None
    if A.size > cap:
        raise OracleInapplicable(f"isomorphism search capped at size {cap}")
    pa, pb = _fingerprints(A), _fingerprints(B)
    if sorted(pa) != sorted(pb):
        return None
    n = A.size
    binary = [(A.tables[nm], B.tables[nm]) for nm, k in A.signature if k == 2]
    unary = [(A.tables[nm], B.tables[nm]) for nm, k in A.signature if k == 1]
    image, inverse = [-1] * n, [-1] * n

    def consistent(x):
        for TA, TB in unary:
            v, w = int(TA[x]), int(TB[image[x]])
            if image[v] >= 0 and image[v] != w or inverse[w] >= 0 and inverse[w] != v:
                return False
        for TA, TB in binary:
            for u in range(n):
                if image[u] < 0:
                    continue
                for s, t in ((x, u), (u, x)):
                    v, w = int(TA[s, t]), int(TB[image[s], image[t]])
                    if image[v] >= 0 and image[v] != w or inverse[w] >= 0 and inverse[w] != v:
                        return False
        return True

    def rec(x):
        if x == n:
            return is_homomorphism(A, B, image)
        for y in range(n):
            if inverse[y] >= 0 or pa[x] != pb[y]:
                continue
            image[x], inverse[y] = y, x
            if consistent(x) and rec(x + 1):
                return True
            image[x], inverse[y] = -1, -1
        return False

    return list(image) if rec(0) else None


def is_isomorphic(A: FiniteAlgebra, B: FiniteAlgebra, cap: int | None = None) -> bool:
    return find_isomorphism(A, B, cap) is not None
