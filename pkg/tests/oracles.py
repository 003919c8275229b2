"""Slow reference implementations used only by the tests.

Congruences here are frozensets of ordered pairs and every lattice operation
is computed on those relations directly, so nothing is shared with the
union-find / table code in the package.
"""
from itertools import product


def rgs(n):
    """Restricted growth strings of length n (one per set partition)."""
    if n == 0:
        yield ()
        return
    def rec(prefix, top):
        if len(prefix) == n:
            yield tuple(prefix)
            return
        for b in range(top + 2):
            yield from rec(prefix + [b], max(top, b))
    yield from rec([0], 0)


def relation(blocks):
    n = len(blocks)
    return frozenset((a, b) for a in range(n) for b in range(n) if blocks[a] == blocks[b])


def to_relation(theta):
    return relation(theta.blocks)


def identity(n):
    return frozenset((a, a) for a in range(n))


def full(n):
    return frozenset(product(range(n), repeat=2))


def closure(rel):
    rel = set(rel)
    changed = True
    while changed:
        changed = False
        for (a, b) in list(rel):
            for (c, d) in list(rel):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
    return frozenset(rel)


def join(p, q):
    return closure(p | q)


def compose(p, q):
    return frozenset((a, d) for (a, b) in p for (c, d) in q if b == c)


def compatible(ops, n, rel):
    for arity, table in ops:
        for xs in product(range(n), repeat=arity):
            for ys in product(range(n), repeat=arity):
                if all((x, y) in rel for x, y in zip(xs, ys)):
                    if (table[xs], table[ys]) not in rel:
                        return False
    return True


def algebra_ops(alg):
    """[(arity, dict args->value)] read straight from the flat tables."""
    n = alg.size
    out = []
    for op in alg.ops:
        table = {}
        for i, xs in enumerate(product(range(n), repeat=op.arity)):
            table[xs] = op.table[i]
        out.append((op.arity, table))
    return out


def congruences(alg):
    n = alg.size
    ops = algebra_ops(alg)
    return [r for r in (relation(b) for b in rgs(n)) if compatible(ops, n, r)]


def cg(congs, n, pairs):
    out = full(n)
    for r in congs:
        if all((a, b) in r for a, b in pairs):
            out = out & r
    return out


def booleans(congs, n):
    bot, top = identity(n), full(n)
    return [p for p in congs if any(p & q == bot and join(p, q) == top for q in congs)]


def cblp_failures(congs, n):
    """θ whose interval [θ) has a Boolean element not of the form β ∨ θ."""
    top = full(n)
    B = booleans(congs, n)
    bad = []
    for t in congs:
        up = [p for p in congs if t <= p]
        bool_up = {p for p in up if any(p & q == t and join(p, q) == top for q in up)}
        image = {join(b, t) for b in B}
        if bool_up != image:
            bad.append(t)
    return bad


def maximal(congs, n):
    top = full(n)
    proper = [p for p in congs if p != top]
    return [p for p in proper if not any(p < q for q in proper)]


def prime(congs, n):
    top = full(n)
    return [p for p in congs if p != top
            and all(a <= p or b <= p for a in congs for b in congs if a & b <= p)]


def radical(congs, n):
    out = full(n)
    for m in maximal(congs, n):
        out = out & m
    return out


def star(congs, n):
    rad = radical(congs, n)
    B = booleans(congs, n)
    below = [a for a in congs if a <= rad]
    return all(any(join(a, b) == t for a in below for b in B) for t in congs)


def permutable(congs):
    return all(compose(p, q) == compose(q, p) for p in congs for q in congs)


def distributive(congs):
    return all(p & join(q, r) == join(p & q, p & r)
               for p in congs for q in congs for r in congs)
