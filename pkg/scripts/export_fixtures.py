"""Write the catalog examples to fixtures/*.alg."""
import sys
from pathlib import Path

from congrkit.algebra import format_algebra
from congrkit.catalog import fixture

KEYS = ["diamond", "pentagon", "lattice_e", "lattice_z", "residuated_a", "l2", "chain_3",
        "boolean_2"]


def main(out_dir="fixtures"):
    out = Path(out_dir)
    out.mkdir(exist_ok=True)
    for key in KEYS:
        path = out / f"{key}.alg"
        path.write_text(format_algebra(fixture(key).algebra))
        print("wrote", path)


if __name__ == "__main__":
    main(*sys.argv[1:])
