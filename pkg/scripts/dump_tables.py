"""Write the Cayley table of (S_n, *_a) for every sandwich element a, one file each.

    python scripts/dump_tables.py IS 2 --out tables/
"""

import argparse
from pathlib import Path

from sandwich.deformed_core import build_deformed_table
from sandwich.finite_maps import enumerate_elements


def main():
    p = argparse.ArgumentParser()
    p.add_argument("family", choices=["T", "IS"])
    p.add_argument("n", type=int)
    p.add_argument("--out", type=Path, default=Path("tables"))
    args = p.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for a in enumerate_elements(args.family, args.n, cap=4):
        name = str(a).strip("[]").replace(",", "_").replace("-", "x")
        build_deformed_table(args.family, args.n, a).save(args.out / f"{args.family}{args.n}_{name}.txt")
    print(f"wrote {len(enumerate_elements(args.family, args.n))} tables to {args.out}")


if __name__ == "__main__":
    main()
