"""Seeded sweep over random lattices: six-way agreement, (*) => CBLP, and the
brute force oracle.  Prints a one-line summary and exits non-zero on any
disagreement."""
import argparse
import random
import sys
import time
from collections import Counter

from congrkit.algebra import con, con_bruteforce, lattice_algebra
from congrkit.catalog import random_lattice
from congrkit.cblp import cblp_equivalents, satisfies_star


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=500)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--max-size", type=int, default=6)
    args = ap.parse_args(argv)

    rng = random.Random(args.seed)
    stats, bad = Counter(), []
    t0 = time.perf_counter()
    for i in range(args.count):
        n = rng.randint(2, args.max_size)
        alg = lattice_algebra(random_lattice(n, rng, name=f"sweep{i}_n{n}"))
        C = con(alg)
        eq = cblp_equivalents(C)
        star = satisfies_star(C).holds
        stats["cblp" if eq.cblp else "no_cblp"] += 1
        stats["star"] += star
        if not eq.agree or (star and not eq.cblp) or con_bruteforce(alg) != set(C.elements):
            bad.append(alg.name)
    dt = time.perf_counter() - t0
    print(f"{args.count} lattices in {dt:.1f}s: {dict(stats)}; disagreements: {bad or 'none'}")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
