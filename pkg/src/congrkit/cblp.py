"""Boolean lifting of congruences, the prime spectrum and its topology,
property (⋆), and the decomposition of semilocal algebras."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce

import numpy as np

from . import config
from .algebra import (AlgebraError, CongruenceLattice, FiniteAlgebra, QuotientMap, cg, con,
                      is_arithmetical, is_homomorphism, product, quotient)
from .lattice import FiniteLattice, boolean_center, interval, is_b_normal, is_distributive


class NotArithmeticalError(AlgebraError):
    pass


def boolean_congruences(conL: CongruenceLattice) -> tuple:
    return boolean_center(conL.lattice).elements


# ---------------------------------------------------------------------------
# spectra

@dataclass
class Spectra:
    spec: tuple
    max: tuple
    rad: int


def is_prime(conL: CongruenceLattice, p: int) -> bool:
    if p == conL.top_index:
        return False
    below = conL.leq[:, p]
    meet_below = conL.leq[conL.meet_table, p]
    return not (meet_below & ~below[:, None] & ~below[None, :]).any()


def spectra(conL: CongruenceLattice) -> Spectra:
    top = conL.top_index
    spec = tuple(p for p in range(len(conL)) if is_prime(conL, p))
    proper = [i for i in range(len(conL)) if i != top]
    maxi = tuple(i for i in proper
                 if not any(conL.leq[i, j] and j != i for j in proper))
    rad = reduce(lambda x, y: int(conL.meet_table[x, y]), maxi, top)
    return Spectra(spec, maxi, rad)


def is_local(conL: CongruenceLattice) -> bool:
    return len(spectra(conL).max) == 1


def is_semilocal(conL: CongruenceLattice) -> bool:
    # Max(A) is always finite for a finite algebra
    return True


# ---------------------------------------------------------------------------
# CBLP

@dataclass
class CblpVerdict:
    theta: int
    holds: bool
    witness: int | None
    boolean_interval: tuple   # B([θ)) as congruence indices
    image: tuple              # {β ∨ θ : β ∈ B(Con A)}


@dataclass
class CblpReport:
    algebra: str
    per_congruence: list
    holds: bool

    @property
    def failing(self) -> list:
        return [v.theta for v in self.per_congruence if not v.holds]


def boolean_of_interval(conL: CongruenceLattice, theta: int) -> tuple:
    """Complemented elements of the lattice [θ) (bottom θ, top ∇)."""
    members = np.flatnonzero(conL.leq[theta])
    J = conL.join_table[np.ix_(members, members)]
    M = conL.meet_table[np.ix_(members, members)]
    ok = ((M == theta) & (J == conL.top_index)).any(axis=1)
    return tuple(int(x) for x in members[ok])


def has_cblp(conL: CongruenceLattice, theta: int, booleans=None) -> CblpVerdict:
    B = boolean_congruences(conL) if booleans is None else booleans
    target = boolean_of_interval(conL, theta)
    image = tuple(sorted({int(conL.join_table[b, theta]) for b in B}))
    missing = sorted(set(target) - set(image))
    return CblpVerdict(theta, not missing, missing[0] if missing else None, target, image)


def algebra_has_cblp(conL: CongruenceLattice) -> CblpReport:
    B = boolean_congruences(conL)
    verdicts = [has_cblp(conL, t, B) for t in range(len(conL))]
    return CblpReport(conL.algebra.name, verdicts, all(v.holds for v in verdicts))


@dataclass
class LiftingMaps:
    theta: int
    interval: FiniteLattice
    v_map: dict               # α -> α ∨ θ, indices in Con(A)
    quotient: QuotientMap
    quotient_con: CongruenceLattice
    s_inverse: dict           # φ ∈ [θ) -> φ/θ as index in Con(A/θ)
    u_map: dict               # α -> (α ∨ θ)/θ, index in Con(A/θ)
    s_iso: bool               # s_inverse is a bounded lattice isomorphism
    triangle: bool            # u_θ = s_inverse ∘ v_θ, u computed inside A/θ
    booleans: tuple           # B(Con A)

    @property
    def v_boolean_image(self) -> tuple:
        return tuple(sorted({self.v_map[b] for b in self.booleans}))

    @property
    def u_boolean_image(self) -> tuple:
        return tuple(sorted({self.u_map[b] for b in self.booleans}))

    @property
    def quotient_boolean(self) -> tuple:
        return boolean_congruences(self.quotient_con)


def lifting_maps(conL: CongruenceLattice, theta: int) -> LiftingMaps:
    alg = conL.algebra
    th = conL[theta]
    q = quotient(alg, th, check=False)
    qcon = con(q.target)
    v_map = {a: int(conL.join_table[a, theta]) for a in range(len(conL))}
    members = [j for j in range(len(conL)) if conL.leq[theta, j]]
    s_inv = {j: qcon.find(q.image(conL[j])) for j in members}
    images = list(s_inv.values())
    s_iso = (len(set(images)) == len(qcon) == len(members)
             and all(conL.leq[i, j] == qcon.leq[s_inv[i], s_inv[j]] for i in members for j in members)
             and s_inv[theta] == qcon.bottom_index and s_inv[conL.top_index] == qcon.top_index)
    # u_θ(α) computed as the congruence of A/θ generated by α/θ
    u_map = {}
    for a in range(len(conL)):
        pairs = {(q(x), q(y)) for x, y in conL[a].pairs() if x < y}
        u_map[a] = qcon.find(cg(q.target, pairs))
    triangle = all(u_map[a] == s_inv[v_map[a]] for a in range(len(conL)))
    return LiftingMaps(theta, interval(conL.lattice, theta), v_map, q, qcon, s_inv, u_map,
                       s_iso, triangle, boolean_congruences(conL))


# ---------------------------------------------------------------------------
# Spec topology

@dataclass
class SpecTopology:
    points: tuple                # prime congruence indices
    opens: dict                  # θ -> D(θ)
    V: dict                      # θ -> V(θ)
    clopens: frozenset           # {V(α) : α Boolean}
    clopens_topological: frozenset  # open sets whose complement is open

    @property
    def open_sets(self) -> frozenset:
        return frozenset(self.opens.values())


def spec_topology(conL: CongruenceLattice) -> SpecTopology:
    points = spectra(conL).spec
    everything = frozenset(points)
    V = {t: frozenset(p for p in points if conL.leq[t, p]) for t in range(len(conL))}
    D = {t: everything - V[t] for t in range(len(conL))}
    opens = set(D.values())
    clopens = frozenset(V[b] for b in boolean_congruences(conL))
    topo = frozenset(U for U in opens if everything - U in opens)
    return SpecTopology(points, D, V, clopens, topo)


def is_strongly_zero_dimensional(t: SpecTopology) -> bool:
    X = frozenset(t.points)
    opens = sorted(t.open_sets, key=sorted)
    clopens = list(t.clopens)
    for U in opens:
        for W in opens:
            if U | W != X:
                continue
            if not any(C <= U and X - C <= W for C in clopens if X - C in t.clopens):
                return False
    return True


# ---------------------------------------------------------------------------
# the six equivalent forms of CBLP

def nary_splitting(conL, candidates, max_n) -> bool:
    """Every multiset φ_1..φ_k (k <= max_n) of candidates with join ∇ splits.

    Depth-first over sorted tuples so prefixes share their reachable meets;
    reachable sets are bitmasks and the step map is memoized.
    """
    J, M, top, bot = conL.join_table, conL.meet_table, conL.top_index, conL.bottom_index
    B = boolean_congruences(conL)
    candidates = sorted(candidates)
    options = {c: tuple(b for b in B if J[c, b] == top) for c in candidates}
    step_cache = {}

    def step(reach, c):
        key = (reach, options[c])
        if key not in step_cache:
            out = 0
            r = reach
            while r:
                low = r & -r
                i = low.bit_length() - 1
                for b in options[c]:
                    out |= 1 << int(M[i, b])
                r ^= low
            step_cache[key] = out
        return step_cache[key]

    def rec(start, depth, joined, reach):
        for k in range(start, len(candidates)):
            c = candidates[k]
            j = c if joined is None else int(J[joined, c])
            r = step(reach, c)
            if j == top and not (r >> bot) & 1:
                return False
            if depth + 1 < max_n and not rec(k, depth + 1, j, r):
                return False
        return True

    return rec(0, 0, None, 1 << top)


def compact_congruences(conL: CongruenceLattice) -> set:
    """K(A): finite joins of principal congruences (all of Con for finite A)."""
    found = {conL.bottom_index}
    for p in sorted(set(conL.principal_index.values())):
        found |= {int(conL.join_table[x, p]) for x in found}
    return found


def compact_pair_splitting(conL: CongruenceLattice) -> bool:
    J, M = conL.join_table, conL.meet_table
    top, bot = conL.top_index, conL.bottom_index
    B = boolean_congruences(conL)
    K = sorted(compact_congruences(conL))
    for i, phi in enumerate(K):
        for psi in K[i:]:
            if J[phi, psi] != top:
                continue
            if not any(M[a, b] == bot and J[phi, a] == top and J[psi, b] == top
                       for a in B for b in B):
                return False
    return True


@dataclass
class CblpEquivalents:
    cblp: bool
    b_normal: bool
    nary_splitting: bool
    compact_pairs: bool
    nary_compact: bool
    strongly_zero_dimensional: bool

    def values(self) -> list:
        return [self.cblp, self.b_normal, self.nary_splitting, self.compact_pairs,
                self.nary_compact, self.strongly_zero_dimensional]

    @property
    def agree(self) -> bool:
        return len(set(self.values())) == 1


def cblp_equivalents(conL: CongruenceLattice, max_n: int | None = None) -> CblpEquivalents:
    max_n = config.limits().nary_max if max_n is None else max_n
    return CblpEquivalents(
        cblp=algebra_has_cblp(conL).holds,
        b_normal=is_b_normal(conL.lattice),
        nary_splitting=nary_splitting(conL, range(len(conL)), max_n),
        compact_pairs=compact_pair_splitting(conL),
        nary_compact=nary_splitting(conL, compact_congruences(conL), max_n),
        strongly_zero_dimensional=is_strongly_zero_dimensional(spec_topology(conL)),
    )


# ---------------------------------------------------------------------------
# property (⋆)

@dataclass
class StarReport:
    holds: bool
    witnesses: dict  # θ -> (α, β) or None


def satisfies_star(conL: CongruenceLattice) -> StarReport:
    rad = spectra(conL).rad
    B = boolean_congruences(conL)
    K = compact_congruences(conL)
    J, leq = conL.join_table, conL.leq
    witnesses = {}
    for t in range(len(conL)):
        found = None
        for a in sorted(K):
            if not (leq[a, rad] and leq[a, t]):
                continue
            for b in B:
                if J[a, b] == t:
                    found = (a, b)
                    break
            if found:
                break
        witnesses[t] = found
    return StarReport(all(w is not None for w in witnesses.values()), witnesses)


# ---------------------------------------------------------------------------
# semilocal decomposition

@dataclass
class Decomposition:
    ok: bool
    factors: list = field(default_factory=list)   # QuotientMap per local factor
    alphas: tuple = ()                            # Boolean congruence indices
    failing: int | None = None                    # congruence without CBLP
    verified: bool = False                        # A -> ∏ A/α_i is an isomorphism


def semilocal_decompose(alg: FiniteAlgebra, conL: CongruenceLattice | None = None) -> Decomposition:
    conL = conL or con(alg)
    if alg.size == 1:
        raise AlgebraError("the trivial algebra has no decomposition into local factors")
    report = algebra_has_cblp(conL)
    if not report.holds:
        return Decomposition(False, failing=report.failing[0])
    sp = spectra(conL)
    if len(sp.max) == 1:
        q = quotient(alg, conL[conL.bottom_index], check=False)
        return Decomposition(True, [q], (conL.bottom_index,), verified=True)
    if not is_arithmetical(alg, conL):
        raise NotArithmeticalError(f"{alg.name} is not arithmetical")
    B = boolean_congruences(conL)
    J, M = conL.join_table, conL.meet_table
    alphas = []
    for mu in sp.max:
        lifts = [b for b in B if J[b, sp.rad] == mu]
        if not lifts:
            return Decomposition(False, failing=sp.rad)
        alphas.append(lifts[0])
    factors = [quotient(alg, conL[a], check=False) for a in alphas]
    meet_all = reduce(lambda x, y: int(M[x, y]), alphas)
    pairwise = all(J[a, b] == conL.top_index for i, a in enumerate(alphas) for b in alphas[i + 1:])
    local = all(is_local(con(q.target)) for q in factors)
    prod, codec = product([q.target for q in factors])
    h = [codec.encode([q(x) for q in factors]) for x in range(alg.size)]
    iso = len(set(h)) == prod.size == alg.size and is_homomorphism(alg, prod, h)
    verified = bool(meet_all == conL.bottom_index and pairwise and local and iso)
    return Decomposition(verified, factors, tuple(alphas), verified=verified)


# ---------------------------------------------------------------------------
# report

def _partition(conL, i):
    return conL[i].format(conL.algebra.labels)


def cblp_report(conL: CongruenceLattice, decompose: bool = False) -> dict:
    rep = algebra_has_cblp(conL)
    star = satisfies_star(conL)
    sp = spectra(conL)
    out = {
        "algebra": conL.algebra.name,
        "cblp": rep.holds,
        "star": star.holds,
        "spec": [_partition(conL, i) for i in sp.spec],
        "max": [_partition(conL, i) for i in sp.max],
        "rad": _partition(conL, sp.rad),
        "per_congruence": [],
    }
    for v in rep.per_congruence:
        entry = {"partition": _partition(conL, v.theta), "cblp": v.holds}
        if v.witness is not None:
            entry["witness"] = _partition(conL, v.witness)
        out["per_congruence"].append(entry)
    if is_distributive(conL.lattice):
        eq = cblp_equivalents(conL)
        out["equivalents"] = {
            "cblp": eq.cblp, "b_normal": eq.b_normal, "nary_splitting": eq.nary_splitting,
            "compact_pairs": eq.compact_pairs, "nary_compact": eq.nary_compact,
            "strongly_zero_dimensional": eq.strongly_zero_dimensional,
        }
    else:
        out["equivalents"] = None
    if decompose:
        try:
            d = semilocal_decompose(conL.algebra, conL)
            if d.ok:
                out["decomposition"] = [_partition(conL, a) for a in d.alphas]
            else:
                out["decomposition"] = {"failure": _partition(conL, d.failing)}
        except AlgebraError as exc:
            out["decomposition"] = {"error": str(exc)}
    return out
