"""Run every verification suite at acceptance bounds and write one JSON report per suite.

    python scripts/run_all_suites.py --out reports/ --jobs 4
"""

import argparse
import json
import sys
import time
from pathlib import Path

from sandwich.verify import DEFAULT_SEED, SUITES, run_suite

BOUNDS = {
    "lemma1": dict(n=4),
    "thm1": dict(n=3, samples=5),
    "lemma2-eq1": dict(n=4),
    "type-recovery": dict(n=4),
    "thm2": dict(n=3, samples=10),
    "prop1": dict(n=5),
    "prop2": dict(grid=4),
    "thm3": dict(grid=5),
    "thm4": dict(grid=3, samples=10_000),
    "oracle-crosscheck": dict(n=3, samples=100),
}


def main():
    p = argparse.ArgumentParser()
    p.add_argument("--out", type=Path, default=Path("reports"))
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--jobs", type=int, default=1)
    args = p.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    ok = True
    for name in SUITES:
        t0 = time.perf_counter()
        checks = run_suite(name, seed=args.seed, jobs=args.jobs, **BOUNDS[name])
        dt = time.perf_counter() - t0
        passed = all(c.passed for c in checks)
        ok &= passed
        print(f"{'PASS' if passed else 'FAIL'}  {name:<18} {dt:6.2f}s  {SUITES[name]}")
        for c in checks:
            if not c.passed:
                print(f"      {c.name}: {c.counterexample}")
        record = {"suite": name, "bounds": BOUNDS[name], "seed": args.seed, "elapsed_s": round(dt, 3),
                  "checks": [c.as_dict() for c in checks]}
        (args.out / f"{name}.json").write_text(json.dumps(record, indent=2) + "\n")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
