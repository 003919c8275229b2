"""Finite (commutative, integral, bounded) residuated lattices."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np

from . import config
from .algebra import (AlgebraError, CongruenceLattice, FiniteAlgebra, con,
                      make_algebra, quotient)
from .cblp import has_cblp
from .lattice import (FiniteLattice, boolean_center, dual, has_filter_blp, has_ideal_blp,
                      is_b_normal, is_normal, normality_profile)
from .partition import Congruence

RESERVED = (("join", 2), ("meet", 2), ("prod", 2), ("imp", 2), ("zero", 0), ("one", 0))


class ResiduatedLatticeError(AlgebraError):
    def __init__(self, axiom, triple=None, detail=""):
        self.axiom, self.triple = axiom, triple
        where = f" at {triple}" if triple is not None else ""
        super().__init__(f"{axiom} fails{where}{': ' + detail if detail else ''}")


class InconsistencyError(RuntimeError):
    """Two routes that must agree did not: an implementation bug."""


@dataclass(frozen=True, eq=False)
class ResiduatedLattice:
    base: FiniteAlgebra

    @property
    def size(self) -> int:
        return self.base.size

    @property
    def name(self) -> str:
        return self.base.name

    @property
    def labels(self) -> list:
        return self.base.labels

    @cached_property
    def join(self):
        return self.base.table("join")

    @cached_property
    def meet(self):
        return self.base.table("meet")

    @cached_property
    def prod(self):
        return self.base.table("prod")

    @cached_property
    def imp(self):
        return self.base.table("imp")

    @cached_property
    def zero(self) -> int:
        return int(self.base.table("zero"))

    @cached_property
    def one(self) -> int:
        return int(self.base.table("one"))

    @cached_property
    def leq(self):
        return self.meet == np.arange(self.size)[:, None]

    @cached_property
    def biimp(self):
        return self.meet[self.imp, self.imp.T]

    @cached_property
    def neg(self):
        return self.imp[:, self.zero]

    @cached_property
    def lattice(self) -> FiniteLattice:
        """The underlying bounded lattice."""
        return FiniteLattice(self.leq, self.join, self.meet, labels=self.labels,
                             name=self.name, check=False)

    def element(self, x) -> int:
        return self.base.element(x)


# ---------------------------------------------------------------------------
# validation

def _first(mask):
    idx = np.argwhere(mask)
    return tuple(int(v) for v in idx[0]) if len(idx) else None


def validate_residuated(alg: FiniteAlgebra) -> ResiduatedLattice:
    for name, arity in RESERVED:
        if not alg.has_op(name) or alg.op(name).arity != arity:
            raise ResiduatedLatticeError("signature", detail=f"needs op {name} of arity {arity}")
    n = alg.size
    J, M, P, I = (alg.table(k) for k in ("join", "meet", "prod", "imp"))
    z, o = int(alg.table("zero")), int(alg.table("one"))
    x = np.arange(n)
    X, Y = np.meshgrid(x, x, indexing="ij")
    for T, name in ((J, "join"), (M, "meet"), (P, "prod")):
        bad = _first(T != T.T)
        if bad:
            raise ResiduatedLatticeError(f"{name} commutativity", bad)
        lhs, rhs = T[T[:, :, None], x[None, None, :]], T[x[:, None, None], T[None, :, :]]
        bad = _first(lhs != rhs)
        if bad:
            raise ResiduatedLatticeError(f"{name} associativity", bad)
    for T, name in ((J, "join"), (M, "meet")):
        if (T[x, x] != x).any():
            raise ResiduatedLatticeError(f"{name} idempotence", (int(np.argmax(T[x, x] != x)),))
    bad = _first(J[X, M[X, Y]] != X)
    if bad:
        raise ResiduatedLatticeError("absorption", bad)
    bad = _first(M[X, J[X, Y]] != X)
    if bad:
        raise ResiduatedLatticeError("absorption", bad)
    if (J[z] != x).any():
        raise ResiduatedLatticeError("zero is the bottom", (int(np.argmax(J[z] != x)),))
    if (J[o] != o).any():
        raise ResiduatedLatticeError("one is the top", (int(np.argmax(J[o] != o)),))
    if (P[:, o] != x).any():
        raise ResiduatedLatticeError("one is the unit of prod", (int(np.argmax(P[:, o] != x)),))
    leq = M == x[:, None]
    # a <= (b -> c)  iff  a ⊙ b <= c
    left = leq[x[:, None, None], I[None, :, :]]
    right = leq[P[:, :, None], x[None, None, :]]
    bad = _first(left != right)
    if bad:
        raise ResiduatedLatticeError("residuation", bad)
    return ResiduatedLattice(alg)


def make_residuated(name, lattice: FiniteLattice, prod, imp=None) -> ResiduatedLattice:
    """Build a residuated lattice from its lattice and product; the
    implication is the residual of prod when not given."""
    prod = np.asarray(prod, dtype=np.int64)
    if imp is None:
        imp = residual(lattice, prod)
    alg = make_algebra(name, lattice.size, {
        "join": lattice.join, "meet": lattice.meet, "prod": prod, "imp": np.asarray(imp),
        "zero": (0, [lattice.bottom]), "one": (0, [lattice.top])}, lattice.labels)
    return validate_residuated(alg)


def residual(L: FiniteLattice, prod) -> np.ndarray:
    """b -> c = join of all a with a ⊙ b <= c."""
    n = L.size
    imp = np.empty((n, n), dtype=np.int64)
    for b in range(n):
        for c in range(n):
            r = L.bottom
            for a in range(n):
                if L.leq[prod[a, b], c]:
                    r = L.join[r, a]
            imp[b, c] = r
    return imp


def godel_algebra(L: FiniteLattice, name=None) -> ResiduatedLattice:
    """prod = meet with its residual (a finite distributive lattice is a
    Heyting algebra)."""
    return make_residuated(name or f"G({L.name})", L, L.meet)


# ---------------------------------------------------------------------------
# filters

def up_closure(A: ResiduatedLattice, S) -> frozenset:
    S = list(S)
    if not S:
        return frozenset()
    return frozenset(np.flatnonzero(A.leq[S].any(axis=0)).tolist())


def _submonoid(A: ResiduatedLattice, X) -> set:
    gen = set(X) | {A.one}
    out = set(gen)
    frontier = set(gen)
    while frontier:
        new = {int(A.prod[a, g]) for a in frontier for g in gen} - out
        out |= new
        frontier = new
    return out


def filter_generated(A: ResiduatedLattice, X) -> frozenset:
    """[X): everything above some finite product of members of X."""
    X = [A.element(x) for x in X]
    return up_closure(A, _submonoid(A, X))


def principal_filter(A: ResiduatedLattice, x) -> frozenset:
    """[x) = {a : x^n <= a for some n}."""
    x = A.element(x)
    powers, p = {x}, x
    while True:
        p = int(A.prod[p, x])
        if p in powers:
            break
        powers.add(p)
    return up_closure(A, powers)


def is_filter(A: ResiduatedLattice, S) -> bool:
    S = set(S)
    if not S or up_closure(A, S) != S:
        return False
    return all(int(A.prod[a, b]) in S for a in S for b in S)


def filters(A: ResiduatedLattice) -> list:
    """All filters, by closure: start from {1} and repeatedly adjoin one element."""
    cap = config.limits().filter_max
    if A.size > cap:
        raise AlgebraError(f"filter enumeration capped at size {cap}")
    start = filter_generated(A, [])
    found, queue = {start}, [start]
    while queue:
        F = queue.pop()
        for x in range(A.size):
            if x in F:
                continue
            G = filter_generated(A, set(F) | {x})
            if G not in found:
                found.add(G)
                queue.append(G)
    return sorted(found, key=lambda F: (len(F), sorted(F)))


def filter_generator(A: ResiduatedLattice, F) -> int:
    """The least element of a finite filter."""
    least = [x for x in F if all(A.leq[x, y] for y in F)]
    if len(least) != 1:
        raise AlgebraError("filter has no least element")
    return least[0]


def filter_label(A: ResiduatedLattice, F) -> str:
    return f"[{A.labels[filter_generator(A, F)]})"


def _filter_lattice(A, fs, name):
    idx = {F: i for i, F in enumerate(fs)}
    k = len(fs)
    leq = np.array([[F <= G for G in fs] for F in fs], dtype=bool)
    join = np.array([[idx[filter_generated(A, F | G)] for G in fs] for F in fs], dtype=np.int64)
    meet = np.array([[idx[F & G] for G in fs] for F in fs], dtype=np.int64).reshape(k, k)
    return FiniteLattice(leq, join, meet, labels=[filter_label(A, F) for F in fs], name=name)


def filt_lattice(A: ResiduatedLattice) -> FiniteLattice:
    return _filter_lattice(A, filters(A), f"Filt({A.name})")


def principal_filters(A: ResiduatedLattice) -> list:
    fs = {principal_filter(A, x) for x in range(A.size)}
    return sorted(fs, key=lambda F: (len(F), sorted(F)))


def pfilt_lattice(A: ResiduatedLattice) -> FiniteLattice:
    return _filter_lattice(A, principal_filters(A), f"PFilt({A.name})")


def prime_filters(A: ResiduatedLattice) -> list:
    full = frozenset(range(A.size))
    out = []
    for F in filters(A):
        if F == full:
            continue
        if all(x in F or y in F for x in range(A.size) for y in range(A.size)
               if int(A.join[x, y]) in F):
            out.append(F)
    return out


def maximal_filters(A: ResiduatedLattice) -> list:
    full = frozenset(range(A.size))
    proper = [F for F in filters(A) if F != full]
    return [F for F in proper if not any(F < G for G in proper)]


# ---------------------------------------------------------------------------
# congruences of filters and quotients

def cong_of_filter(A: ResiduatedLattice, F) -> Congruence:
    if not is_filter(A, F):
        raise AlgebraError(f"{sorted(F)} is not a filter")
    inF = np.zeros(A.size, dtype=bool)
    inF[list(F)] = True
    return Congruence.from_pairs(A.size, map(tuple, np.argwhere(inF[A.biimp])))


def quotient_by_filter(A: ResiduatedLattice, F):
    """(A/F as a residuated lattice, projection)."""
    q = quotient(A.base, cong_of_filter(A, F))
    return validate_residuated(q.target), q


def boolean_center_rl(A: ResiduatedLattice) -> frozenset:
    return frozenset(boolean_center(A.lattice).elements)


def idempotents(A: ResiduatedLattice) -> frozenset:
    x = np.arange(A.size)
    return frozenset(np.flatnonzero(A.prod[x, x] == x).tolist())


def regular_elements(A: ResiduatedLattice) -> frozenset:
    x = np.arange(A.size)
    return frozenset(np.flatnonzero(A.neg[A.neg] == x).tolist())


@dataclass
class BlpVerdict:
    filter: frozenset
    holds: bool
    witness: int | None  # element of A/F that is Boolean but not e/F


@dataclass
class BlpReport:
    algebra: str
    per_filter: list
    holds: bool

    @property
    def failing(self) -> list:
        return [v.filter for v in self.per_filter if not v.holds]


def _lifts(A, F, subset_fn):
    Q, q = quotient_by_filter(A, F)
    target = subset_fn(Q)
    image = {q(e) for e in subset_fn(A)}
    return target, image, q


def has_blp(A: ResiduatedLattice, F) -> BlpVerdict:
    target, image, _ = _lifts(A, F, boolean_center_rl)
    missing = sorted(target - image)
    return BlpVerdict(frozenset(F), not missing, missing[0] if missing else None)


def algebra_has_blp(A: ResiduatedLattice) -> BlpReport:
    verdicts = [has_blp(A, F) for F in filters(A)]
    return BlpReport(A.name, verdicts, all(v.holds for v in verdicts))


def has_ilp(A: ResiduatedLattice, F) -> bool:
    target, image, _ = _lifts(A, F, idempotents)
    return target == image


def regular_lifts(A: ResiduatedLattice, F) -> bool:
    """Reg(A/F) = Reg(A)/F."""
    target, image, _ = _lifts(A, F, regular_elements)
    return target == image


# ---------------------------------------------------------------------------
# classification

@dataclass
class Classification:
    is_godel: bool
    is_bl: bool
    is_mv: bool
    is_gelfand: bool


def is_godel(A: ResiduatedLattice) -> bool:
    return bool((A.prod == A.meet).all())


def is_bl(A: ResiduatedLattice) -> bool:
    prelinear = (A.join[A.imp, A.imp.T] == A.one).all()
    x = np.arange(A.size)
    divisible = (A.prod[x[:, None], A.imp] == A.meet).all()
    return bool(prelinear and divisible)


def is_mv(A: ResiduatedLattice) -> bool:
    return is_bl(A) and regular_elements(A) == frozenset(range(A.size))


def is_gelfand(A: ResiduatedLattice) -> bool:
    maxi = maximal_filters(A)
    direct = all(sum(P <= M for M in maxi) == 1 for P in prime_filters(A))
    via_filters = is_normal(filt_lattice(A))
    if direct != via_filters:
        raise InconsistencyError(f"Gelfand test disagrees with normality of Filt({A.name})")
    return direct


def classify(A: ResiduatedLattice) -> Classification:
    bl = is_bl(A)
    return Classification(is_godel(A), bl, bl and is_mv(A), is_gelfand(A))


def reticulation(A: ResiduatedLattice) -> FiniteLattice:
    R = dual(pfilt_lattice(A))
    R.name = f"L({A.name})"
    return R


# ---------------------------------------------------------------------------
# BLP versus CBLP

@dataclass
class CrosscheckRow:
    filter: frozenset
    congruence: int
    blp: bool
    cblp: bool


@dataclass
class Crosscheck:
    rows: list
    filters_to_congruences_iso: bool

    @property
    def agree(self) -> bool:
        return self.filters_to_congruences_iso and all(r.blp == r.cblp for r in self.rows)


def filters_to_congruences(A: ResiduatedLattice, conL: CongruenceLattice):
    """(F ↦ ∼_F as a map of indices, and whether it is a lattice isomorphism)."""
    fs = filters(A)
    FL = filt_lattice(A)
    h = [conL.find(cong_of_filter(A, F)) for F in fs]
    iso = len(set(h)) == len(fs) == len(conL)
    if iso:
        k = len(fs)
        for i in range(k):
            for j in range(k):
                if (FL.leq[i, j] != conL.leq[h[i], h[j]]
                        or h[FL.join[i, j]] != conL.join_table[h[i], h[j]]
                        or h[FL.meet[i, j]] != conL.meet_table[h[i], h[j]]):
                    iso = False
    return h, iso


def blp_cblp_crosscheck(A: ResiduatedLattice, conL: CongruenceLattice | None = None,
                        strict: bool = True) -> Crosscheck:
    conL = conL or con(A.base)
    h, iso = filters_to_congruences(A, conL)
    rows = []
    for F, t in zip(filters(A), h):
        rows.append(CrosscheckRow(F, t, has_blp(A, F).holds, has_cblp(conL, t).holds))
    out = Crosscheck(rows, iso)
    if strict and not out.agree:
        raise InconsistencyError(f"BLP and CBLP disagree on {A.name}")
    return out


@dataclass
class EightWay:
    cblp: bool
    blp: bool
    con_b_normal: bool
    filt_b_normal: bool
    pfilt_b_normal: bool
    reticulation_b_conormal: bool
    reticulation_filter_blp: bool
    pfilt_ideal_blp: bool

    def values(self) -> list:
        return list(vars(self).values())

    @property
    def agree(self) -> bool:
        return len(set(self.values())) == 1


def eight_way(A: ResiduatedLattice, conL: CongruenceLattice | None = None) -> EightWay:
    from .cblp import algebra_has_cblp

    conL = conL or con(A.base)
    PF = pfilt_lattice(A)
    R = reticulation(A)
    return EightWay(
        cblp=algebra_has_cblp(conL).holds,
        blp=algebra_has_blp(A).holds,
        con_b_normal=is_b_normal(conL.lattice),
        filt_b_normal=is_b_normal(filt_lattice(A)),
        pfilt_b_normal=is_b_normal(PF),
        reticulation_b_conormal=normality_profile(R).b_conormal,
        reticulation_filter_blp=has_filter_blp(R),
        pfilt_ideal_blp=has_ideal_blp(PF),
    )


# ---------------------------------------------------------------------------
# enumeration of small residuated lattices

def residuated_structures(L: FiniteLattice, name="R") -> list:
    """Every residuated lattice on L (commutative, integral), by filling the
    product table with early rejection.  Rejection rules: x⊙y <= x∧y,
    monotone in each argument, and x⊙0 = 0; full validation at the end."""
    n = L.size
    bot, top = L.bottom, L.top
    free = [(i, j) for i in range(n) for j in range(i, n)
            if bot not in (i, j) and top not in (i, j)]
    P = -np.ones((n, n), dtype=np.int64)
    for i in range(n):
        P[i, bot] = P[bot, i] = bot
        P[i, top] = P[top, i] = i
    out = []

    def monotone_ok(i, j):
        v = P[i, j]
        for k in range(n):
            # compare with every filled entry in the same row
            w = P[i, k]
            if w < 0:
                continue
            if L.leq[j, k] and not L.leq[v, w]:
                return False
            if L.leq[k, j] and not L.leq[w, v]:
                return False
        return True

    def rec(pos):
        if pos == len(free):
            try:
                out.append(make_residuated(f"{name}{len(out)}", L, P.copy()))
            except ResiduatedLatticeError:
                pass
            return
        i, j = free[pos]
        for v in range(n):
            if not L.leq[v, L.meet[i, j]]:
                continue
            P[i, j] = P[j, i] = v
            if monotone_ok(i, j) and monotone_ok(j, i):
                rec(pos + 1)
        P[i, j] = P[j, i] = -1

    rec(0)
    return out
