"""Tabulate, per type of a in T_n, the ~_a class-size multiset and the recovered type.

Every type is checked against one brute-force representative; the table
shows that distinct types never share a multiset.

    python scripts/class_size_census.py 6 --csv census6.csv
"""

import argparse
import csv
import sys

from sandwich.finite_maps import type_of
from sandwich.tn_classify import (
    class_sizes_from_type,
    count_of_type,
    enumerate_types,
    recover_type_from_class_sizes,
    representative_of_type,
    sim_a_classes,
)


def main():
    p = argparse.ArgumentParser()
    p.add_argument("n", type=int)
    p.add_argument("--csv", help="write rows to this file")
    p.add_argument("--brute-max", type=int, default=5, help="largest n checked by enumerating T_n")
    args = p.parse_args()
    n = args.n

    rows, seen = [], {}
    for t in enumerate_types(n):
        ms = class_sizes_from_type(t, n)
        if n <= args.brute_max:
            assert sim_a_classes(representative_of_type(t), cap=n).multiset == ms
        recovered = recover_type_from_class_sizes(ms, n)
        assert recovered == t == type_of(representative_of_type(t))
        assert ms not in seen, f"{t} and {seen[ms]} share a multiset"
        seen[ms] = t
        rows.append({
            "partition": "+".join(map(str, t.as_partition())),
            "type": str(t),
            "transformations": count_of_type(t, n),
            "classes": ms.class_count(),
            "multiset": " ".join(f"{s}:{c}" for s, c in ms.pairs),
        })

    w = csv.DictWriter(open(args.csv, "w", newline="") if args.csv else sys.stdout, fieldnames=list(rows[0]))
    w.writeheader()
    w.writerows(rows)
    print(f"# {len(rows)} types, all multisets distinct, all recovered", file=sys.stderr)


if __name__ == "__main__":
    main()
