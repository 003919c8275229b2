"""Recompute the worked examples: congruence lattices, CBLP verdicts,
spectra and the residuated example."""
from congrkit.algebra import con
from congrkit.catalog import fixture, residuated_a
from congrkit.cblp import algebra_has_cblp, boolean_congruences, lifting_maps, satisfies_star, spectra
from congrkit.reslat import algebra_has_blp, classify, filter_label, filters


def show_lattice(key):
    f = fixture(key)
    C = con(f.algebra)
    rep = algebra_has_cblp(C)
    sp = spectra(C)
    print(f"== {key}: |Con| = {len(C)}")
    print("  Boolean:", ", ".join(C.label(i) for i in boolean_congruences(C)))
    print("  CBLP:", rep.holds, "  (*):", satisfies_star(C).holds)
    for i in rep.failing:
        print("  fails at", C.label(i))
    print("  Max:", ", ".join(C.label(i) for i in sp.max) or "-")
    print("  Rad:", C.label(sp.rad))
    return C, f


def main():
    for key in ["diamond", "pentagon", "lattice_e"]:
        show_lattice(key)
    C, f = show_lattice("lattice_z")
    m = lifting_maps(C, C.find(f.named["zeta4"]))
    Q = m.quotient_con
    print("  image of B(Con Z) in Con(Z/zeta4):", [Q.label(i) for i in m.u_boolean_image])
    print("  B(Con(Z/zeta4)):", [Q.label(i) for i in m.quotient_boolean])

    A = residuated_a()
    print("== residuated_a")
    print("  filters:", ", ".join(filter_label(A, F) for F in filters(A)))
    print("  BLP failures:", ", ".join(filter_label(A, F) for F in algebra_has_blp(A).failing))
    print("  classify:", classify(A))


if __name__ == "__main__":
    main()
