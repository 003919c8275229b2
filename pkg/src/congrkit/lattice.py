"""Finite bounded lattices given by their order or by join/meet tables.

Everything here works on plain index sets; subsets of a lattice (filters,
ideals, Boolean centers) are frozensets of element indices.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .partition import Congruence


class LatticeError(ValueError):
    pass


class NotDistributiveError(LatticeError):
    pass


def _lub_table(leq: np.ndarray, upper: bool) -> np.ndarray:
    n = leq.shape[0]
    rel = leq if upper else leq.T
    out = np.empty((n, n), dtype=np.int64)
    for x in range(n):
        for y in range(x, n):
            bounds = np.flatnonzero(rel[x] & rel[y])
            # the least bound is the one below every other bound
            sub = rel[np.ix_(bounds, bounds)]
            best = bounds[sub.all(axis=1)]
            if len(best) != 1:
                kind = "join" if upper else "meet"
                raise LatticeError(f"elements {x} and {y} have no {kind}")
            out[x, y] = out[y, x] = best[0]
    return out


class FiniteLattice:
    """A finite bounded lattice.

    ``leq[a, b]`` is True when a <= b.  ``origin`` optionally records, for a
    sublattice, the index each element had in the lattice it came from.
    """

    def __init__(self, leq, join=None, meet=None, labels=None, name="", origin=None,
                 check=True):
        leq = np.array(leq, dtype=bool)
        n = leq.shape[0]
        if n == 0 or leq.shape != (n, n):
            raise LatticeError("order relation must be a non-empty square matrix")
        if check:
            if not leq.diagonal().all():
                raise LatticeError("order is not reflexive")
            if (leq & leq.T & ~np.eye(n, dtype=bool)).any():
                raise LatticeError("order is not antisymmetric")
            f = leq.astype(np.float32)
            if ((f @ f > 0) & ~leq).any():
                raise LatticeError("order is not transitive")
        self.leq = leq
        self.join = np.array(join, dtype=np.int64) if join is not None else _lub_table(leq, True)
        self.meet = np.array(meet, dtype=np.int64) if meet is not None else _lub_table(leq, False)
        self.size = n
        bottoms = np.flatnonzero(leq.all(axis=1))
        tops = np.flatnonzero(leq.all(axis=0))
        if len(bottoms) != 1 or len(tops) != 1:
            raise LatticeError("lattice must have a bottom and a top")
        self.bottom = int(bottoms[0])
        self.top = int(tops[0])
        self.labels = list(labels) if labels is not None else [str(i) for i in range(n)]
        if len(self.labels) != n:
            raise LatticeError("wrong number of labels")
        self.name = name
        self.origin = tuple(origin) if origin is not None else None
        if check and (join is not None or meet is not None):
            self._check_tables()

    def _check_tables(self):
        n, leq = self.size, self.leq
        for tab, rel, kind in ((self.join, leq, "join"), (self.meet, leq.T, "meet")):
            if tab.shape != (n, n) or tab.min() < 0 or tab.max() >= n:
                raise LatticeError(f"{kind} table has the wrong shape or range")
            # tab[x,y] must be a bound of x and y ...
            if not (rel[np.arange(n)[:, None], tab] & rel[np.arange(n)[None, :], tab]).all():
                raise LatticeError(f"{kind} table entry is not a bound")
            # ... and lie below every common bound
            for x in range(n):
                common = rel[x][None, :] & rel
                bad = common & ~rel[tab[x]]
                if bad.any():
                    y, _ = np.argwhere(bad)[0]
                    raise LatticeError(f"{kind} of {x} and {y} is not the least bound")

    # constructors -----------------------------------------------------
    @classmethod
    def from_covers(cls, n, covers, labels=None, name=""):
        leq = np.eye(n, dtype=bool)
        for a, b in covers:
            leq[a, b] = True
        for k in range(n):  # Warshall
            leq |= leq[:, [k]] & leq[[k], :]
        return cls(leq, labels=labels, name=name)

    @classmethod
    def from_tables(cls, join, meet, labels=None, name=""):
        meet = np.array(meet, dtype=np.int64)
        n = meet.shape[0]
        leq = meet == np.arange(n)[:, None]
        return cls(leq, join, meet, labels=labels, name=name)

    @classmethod
    def chain(cls, n, name=None):
        leq = np.triu(np.ones((n, n), dtype=bool))
        return cls(leq, name=name or f"chain_{n}")

    # basic queries ------------------------------------------------------
    def le(self, a, b) -> bool:
        return bool(self.leq[a, b])

    def label(self, i) -> str:
        return self.labels[i]

    def index(self, label) -> int:
        return self.labels.index(label)

    def up(self, x) -> frozenset:
        return frozenset(np.flatnonzero(self.leq[x]).tolist())

    def down(self, x) -> frozenset:
        return frozenset(np.flatnonzero(self.leq[:, x]).tolist())

    def heights(self) -> list[int]:
        """Length of the longest chain from the bottom to each element."""
        h = [0] * self.size
        below = {x: [] for x in range(self.size)}
        for a, b in hasse_edges(self):
            below[b].append(a)
        # down-set size is a linear extension of the order
        for x in sorted(range(self.size), key=lambda x: int(self.leq[:, x].sum())):
            h[x] = max((h[a] + 1 for a in below[x]), default=0)
        return h

    def __eq__(self, other):
        return (isinstance(other, FiniteLattice) and self.size == other.size
                and bool((self.leq == other.leq).all()))

    def __hash__(self):
        return hash(self.leq.tobytes())

    def __repr__(self):
        return f"FiniteLattice({self.name or '?'}, size={self.size})"


# ---------------------------------------------------------------------------
# structure checks

def is_distributive(L: FiniteLattice) -> bool:
    J, M = L.join, L.meet
    # x ∧ (y ∨ z) == (x ∧ y) ∨ (x ∧ z) for all x, y, z
    for x in range(L.size):
        if not (M[x][J] == J[M[x][:, None], M[x][None, :]]).all():
            return False
    return True


def is_modular(L: FiniteLattice) -> bool:
    J, M, leq = L.join, L.meet, L.leq
    # x <= z implies x ∨ (y ∧ z) == (x ∨ y) ∧ z
    zs = np.arange(L.size)[None, :]
    for x in range(L.size):
        lhs = J[x][M]  # lhs[y, z]
        rhs = M[J[x][:, None], zs]
        if not (lhs == rhs)[:, leq[x]].all():
            return False
    return True


@dataclass
class LatticeProfile:
    is_distributive: bool
    is_modular: bool
    is_boolean: bool


@dataclass
class BooleanCenter:
    elements: tuple
    complement: dict
    all_complements: dict = field(default_factory=dict)
    unique: bool = True


def lattice_profile(L: FiniteLattice) -> LatticeProfile:
    dist = is_distributive(L)
    mod = dist or is_modular(L)
    boolean = dist and len(boolean_center(L).elements) == L.size
    return LatticeProfile(dist, mod, boolean)


def complements(L: FiniteLattice, x) -> list[int]:
    ok = (L.meet[x] == L.bottom) & (L.join[x] == L.top)
    return np.flatnonzero(ok).tolist()


def boolean_center(L: FiniteLattice) -> BooleanCenter:
    ok = (L.meet == L.bottom) & (L.join == L.top)
    elems, comp, allc = [], {}, {}
    unique = True
    for x in range(L.size):
        cs = np.flatnonzero(ok[x]).tolist()
        if cs:
            elems.append(x)
            comp[x] = cs[0]
            allc[x] = tuple(cs)
            unique = unique and len(cs) == 1
    return BooleanCenter(tuple(elems), comp, allc, unique)


# ---------------------------------------------------------------------------
# normality family

def _require_distributive(L):
    if not is_distributive(L):
        raise NotDistributiveError(f"lattice {L.name or ''} is not distributive".replace("  ", " "))


def _splits(L: FiniteLattice, candidates) -> bool:
    """For every x ∨ y = 1 find e, f among candidates with e ∧ f = 0,
    x ∨ e = 1 and y ∨ f = 1."""
    cand = np.array(sorted(candidates), dtype=np.int64)
    J, M = L.join, L.meet
    covers = J[:, cand] == L.top  # covers[x, k]: x ∨ cand[k] = 1
    disjoint = M[np.ix_(cand, cand)] == L.bottom
    for x in range(L.size):
        for y in range(x, L.size):
            if J[x, y] != L.top:
                continue
            if not disjoint[np.ix_(covers[x], covers[y])].any():
                return False
    return True


@dataclass
class NormalityProfile:
    normal: bool
    b_normal: bool
    conormal: bool
    b_conormal: bool


def is_normal(L: FiniteLattice) -> bool:
    _require_distributive(L)
    return _splits(L, range(L.size))


def is_b_normal(L: FiniteLattice) -> bool:
    _require_distributive(L)
    return _splits(L, boolean_center(L).elements)


def normality_profile(L: FiniteLattice) -> NormalityProfile:
    _require_distributive(L)
    D = dual(L)
    return NormalityProfile(
        normal=_splits(L, range(L.size)),
        b_normal=_splits(L, boolean_center(L).elements),
        conormal=_splits(D, range(D.size)),
        b_conormal=_splits(D, boolean_center(D).elements),
    )


def id_local(L: FiniteLattice) -> bool:
    """Exactly one maximal ideal, i.e. x ∨ y = 1 forces x = 1 or y = 1.
    The one-element lattice has no proper ideal and is not local."""
    _require_distributive(L)
    if L.size == 1:
        return False
    hit = L.join == L.top
    ones = np.zeros(L.size, dtype=bool)
    ones[L.top] = True
    return bool((~hit | ones[:, None] | ones[None, :]).all())


def rad_id(L: FiniteLattice) -> frozenset:
    _require_distributive(L)
    out = []
    for a in range(L.size):
        xs = np.flatnonzero(L.join[a] == L.top)
        if all(x == L.top for x in xs):
            out.append(a)
    return frozenset(out)


# ---------------------------------------------------------------------------
# filters and ideals

def filters(L: FiniteLattice) -> list[frozenset]:
    """All filters, listed by generator.  In a finite lattice each filter is
    ↑(meet of its members), so the single-element generators give them all."""
    return [L.up(x) for x in range(L.size)]


def ideals(L: FiniteLattice) -> list[frozenset]:
    return [L.down(x) for x in range(L.size)]


def is_filter(L: FiniteLattice, S) -> bool:
    S = set(S)
    if not S:
        return False
    for x in S:
        if not L.up(x) <= S:
            return False
        for y in S:
            if int(L.meet[x, y]) not in S:
                return False
    return True


def is_ideal(L: FiniteLattice, S) -> bool:
    return is_filter(dual(L), S)


def prime_filters(L: FiniteLattice) -> list[frozenset]:
    full = frozenset(range(L.size))
    return [F for F in filters(L) if F != full and is_ideal(L, full - F)]


def prime_ideals(L: FiniteLattice) -> list[frozenset]:
    full = frozenset(range(L.size))
    return [I for I in ideals(L) if I != full and is_filter(L, full - I)]


def _maximal_proper(sets, full):
    proper = [S for S in sets if S != full]
    return [S for S in proper if not any(S < T for T in proper)]


def maximal_filters(L: FiniteLattice) -> list[frozenset]:
    return _maximal_proper(filters(L), frozenset(range(L.size)))


def maximal_ideals(L: FiniteLattice) -> list[frozenset]:
    return _maximal_proper(ideals(L), frozenset(range(L.size)))


# ---------------------------------------------------------------------------
# derived lattices

def dual(L: FiniteLattice) -> FiniteLattice:
    return FiniteLattice(L.leq.T.copy(), L.meet.copy(), L.join.copy(), labels=L.labels,
                         name=f"dual({L.name})" if L.name else "", origin=L.origin, check=False)


def sublattice(L: FiniteLattice, members, name="") -> FiniteLattice:
    members = sorted(members)
    pos = {m: i for i, m in enumerate(members)}
    idx = np.array(members, dtype=np.int64)
    try:
        J = np.vectorize(pos.__getitem__, otypes=[np.int64])(L.join[np.ix_(idx, idx)])
        M = np.vectorize(pos.__getitem__, otypes=[np.int64])(L.meet[np.ix_(idx, idx)])
    except KeyError:
        raise LatticeError("subset is not closed under join and meet") from None
    origin = [L.origin[m] for m in members] if L.origin else members
    return FiniteLattice(L.leq[np.ix_(idx, idx)], J, M, labels=[L.labels[m] for m in members],
                         name=name, origin=origin, check=False)


def interval(L: FiniteLattice, x, top=None) -> FiniteLattice:
    """The principal filter [x) (or the interval [x, top]) as a lattice."""
    mask = L.leq[x].copy()
    if top is not None:
        mask &= L.leq[:, top]
    return sublattice(L, np.flatnonzero(mask).tolist(), name=f"[{L.labels[x]})")


def hasse_edges(L: FiniteLattice) -> list[tuple[int, int]]:
    strict = L.leq & ~np.eye(L.size, dtype=bool)
    s = strict.astype(np.float32)
    between = (s @ s) > 0
    cov = strict & ~between
    return [(int(a), int(b)) for a, b in np.argwhere(cov)]


def lattice_product(L1: FiniteLattice, L2: FiniteLattice) -> FiniteLattice:
    n1, n2 = L1.size, L2.size
    i1, i2 = np.divmod(np.arange(n1 * n2), n2)
    leq = L1.leq[np.ix_(i1, i1)] & L2.leq[np.ix_(i2, i2)]
    J = L1.join[np.ix_(i1, i1)] * n2 + L2.join[np.ix_(i2, i2)]
    M = L1.meet[np.ix_(i1, i1)] * n2 + L2.meet[np.ix_(i2, i2)]
    labels = [f"({L1.labels[a]},{L2.labels[b]})" for a, b in zip(i1, i2)]
    return FiniteLattice(leq, J, M, labels=labels, check=False,
                         name=f"{L1.name}x{L2.name}" if L1.name and L2.name else "")


def quotient_lattice(L: FiniteLattice, part: Congruence) -> FiniteLattice:
    reps = np.array(part.representatives(), dtype=np.int64)
    blocks = np.array(part.blocks, dtype=np.int64)
    J, M = blocks[L.join], blocks[L.meet]
    # well defined iff the block of x∨y depends only on the blocks of x and y
    for tab in (J, M):
        if not (tab == tab[np.ix_(reps[blocks], reps[blocks])]).all():
            raise LatticeError("partition is not a lattice congruence")
    J, M = J[np.ix_(reps, reps)], M[np.ix_(reps, reps)]
    return FiniteLattice.from_tables(J, M, labels=[L.labels[r] for r in reps],
                                     name=f"{L.name}/~" if L.name else "")


# ---------------------------------------------------------------------------
# lifting of Boolean elements along lattice congruences

def filter_congruence(L: FiniteLattice, F) -> Congruence:
    """x ≡ y iff x ∧ a = y ∧ a for some a in F."""
    F = np.array(sorted(F), dtype=np.int64)
    cols = L.meet[:, F]  # cols[x, k] = x ∧ F[k]
    rel = (cols[:, None, :] == cols[None, :, :]).any(axis=2)
    return Congruence.from_pairs(L.size, map(tuple, np.argwhere(rel)))


def ideal_congruence(L: FiniteLattice, I) -> Congruence:
    """x ≈ y iff x ∨ a = y ∨ a for some a in I."""
    return filter_congruence(dual(L), I)


def lattice_blp(L: FiniteLattice, part: Congruence):
    """Boolean lifting along L -> L/part: returns (holds, witness block)."""
    Q = quotient_lattice(L, part)
    target = set(boolean_center(Q).elements)
    image = {part.blocks[e] for e in boolean_center(L).elements}
    missing = sorted(target - image)
    return (not missing, missing[0] if missing else None)


def has_filter_blp(L: FiniteLattice) -> bool:
    return all(lattice_blp(L, filter_congruence(L, F))[0] for F in filters(L))


def has_ideal_blp(L: FiniteLattice) -> bool:
    return all(lattice_blp(L, ideal_congruence(L, I))[0] for I in ideals(L))


# ---------------------------------------------------------------------------
# isomorphism of finite lattices (order isomorphism)

def find_lattice_isomorphism(L: FiniteLattice, M: FiniteLattice):
    """Order isomorphism L -> M as a list, or None."""
    if L.size != M.size:
        return None

    def prints(K):
        up = K.leq.sum(axis=1)
        down = K.leq.sum(axis=0)
        h = K.heights()
        return [(int(up[i]), int(down[i]), h[i]) for i in range(K.size)]

    pl, pm = prints(L), prints(M)
    if sorted(pl) != sorted(pm):
        return None
    order = sorted(range(L.size), key=lambda x: (pl[x][2], x))
    image = [-1] * L.size
    used = [False] * M.size

    def rec(k):
        if k == len(order):
            return True
        x = order[k]
        for y in range(M.size):
            if used[y] or pm[y] != pl[x]:
                continue
            ok = True
            for x2 in order[:k]:
                y2 = image[x2]
                if L.leq[x, x2] != M.leq[y, y2] or L.leq[x2, x] != M.leq[y2, y]:
                    ok = False
                    break
            if ok:
                image[x], used[y] = y, True
                if rec(k + 1):
                    return True
                image[x], used[y] = -1, False
        return False

    return image if rec(0) else None


def isomorphic(L: FiniteLattice, M: FiniteLattice) -> bool:
    return find_lattice_isomorphism(L, M) is not None


# ---------------------------------------------------------------------------
# text format and DOT

def parse_lattice(text: str) -> FiniteLattice:
    name, n, labels = "", None, None
    mode, rows, covers = None, [], []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        key = words[0]
        if key == "lattice":
            name = " ".join(words[1:])
        elif key == "size":
            n = int(words[1])
        elif key == "elements":
            labels = words[1:]
        elif key in ("leq", "covers"):
            mode = key
        elif mode == "leq":
            rows.append([int(w) for w in words])
        elif mode == "covers":
            if len(words) != 2:
                raise LatticeError(f"cover line needs two entries: {line!r}")
            covers.append(tuple(words))
        else:
            raise LatticeError(f"unexpected line {line!r}")
    if n is None:
        raise LatticeError("missing size")
    if labels is not None and len(labels) != n:
        raise LatticeError("elements line does not match size")

    def elem(w):
        if labels and w in labels:
            return labels.index(w)
        try:
            v = int(w)
        except ValueError:
            raise LatticeError(f"unknown element {w!r}") from None
        if not 0 <= v < n:
            raise LatticeError(f"element {v} out of range")
        return v

    if mode == "leq":
        if len(rows) != n or any(len(r) != n for r in rows):
            raise LatticeError("leq matrix must be size x size")
        return FiniteLattice(np.array(rows, dtype=bool), labels=labels, name=name)
    if mode == "covers":
        return FiniteLattice.from_covers(n, [(elem(a), elem(b)) for a, b in covers],
                                         labels=labels, name=name)
    raise LatticeError("need a leq or covers section")


def format_lattice(L: FiniteLattice) -> str:
    lines = [f"lattice {L.name or 'L'}", f"size {L.size}",
             "elements " + " ".join(L.labels), "covers"]
    for a, b in hasse_edges(L):
        lines.append(f"{L.labels[a]} {L.labels[b]}")
    return "\n".join(lines) + "\n"


def to_dot(L: FiniteLattice, name=None) -> str:
    h = L.heights()
    out = [f'digraph "{name or L.name or "lattice"}" {{', "  rankdir=BT;",
           "  node [shape=circle];"]
    for i in range(L.size):
        out.append(f'  n{i} [label="{L.labels[i]}"];')
    for a, b in hasse_edges(L):
        out.append(f"  n{a} -> n{b} [arrowhead=none];")
    for r in sorted(set(h)):
        nodes = " ".join(f"n{i};" for i in range(L.size) if h[i] == r)
        out.append(f"  {{ rank=same; {nodes} }}")
    out.append("}")
    return "\n".join(out) + "\n"
