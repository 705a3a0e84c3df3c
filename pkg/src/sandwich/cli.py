"""Command-line front end.

    sandwich idempotents IS 3 "[2,-,1]"
    sandwich idempotents B "b^2 a^1" --chain 3
    sandwich classify T 4
    sandwich witness T 3 "[1,1,2]" "[3,2,2]"
    sandwich verify thm3 --grid 5
    sandwich count 6 --format csv

Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict, dataclass, field
from typing import Optional, Sequence

from . import bicyclic as bc
from .deformed_core import build_deformed_table, deformed_idempotents, idempotents_of_table
from .finite_maps import CapExceeded, enumerate_elements, parse_element, rank, type_of
from .iso_oracle import verify_isomorphism
from .isn_classify import (
    RankMismatch,
    enumerate_idempotents_isn,
    idempotent_count_formula,
    isn_class_count,
    isn_iso_map,
    isn_isomorphic,
    isn_witness,
)
from .tn_classify import (
    EXACT_CAP,
    TypeMismatch,
    count_of_type,
    enumerate_types,
    partition_count,
    tn_iso_map,
    tn_isomorphic,
    tn_witness,
)
from .verify import DEFAULT_SEED, SUITES, partition_into_classes, run_suite

TABLE_CAP = 4
ELEMENT_CAP = 5

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class Report:
    command: str
    meta: dict = field(default_factory=dict)
    payload: dict = field(default_factory=dict)
    rows: list = field(default_factory=list)
    checks: list = field(default_factory=list)
    elapsed_s: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c["passed"] for c in self.checks)

    def add_check(self, name: str, passed: bool, checked: int = 0, detail: str = "",
                  counterexample: Optional[str] = None) -> None:
        self.checks.append(dict(name=name, passed=bool(passed), checked=checked, detail=detail,
                                counterexample=counterexample))

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls(**json.loads(text))

    def to_text(self) -> str:
        out = [f"# {self.command}  " + "  ".join(f"{k}={v}" for k, v in self.meta.items())]
        for k, v in self.payload.items():
            if isinstance(v, list):
                out.append(f"{k}:")
                out.extend(f"  {item}" for item in v)
            else:
                out.append(f"{k}: {v}")
        if self.rows:
            cols = list(self.rows[0])
            widths = [max(len(c), *(len(str(r[c])) for r in self.rows)) for c in cols]
            out.append("  ".join(c.ljust(w) for c, w in zip(cols, widths)))
            for r in self.rows:
                out.append("  ".join(str(r[c]).ljust(w) for c, w in zip(cols, widths)))
        for c in self.checks:
            line = f"{'PASS' if c['passed'] else 'FAIL'}  {c['name']}  [{c['checked']} checked]"
            if c["detail"]:
                line += f"  {c['detail']}"
            out.append(line)
            if c["counterexample"]:
                out.append(f"      counterexample: {c['counterexample']}")
        if self.checks:
            out.append(f"verdict: {'PASS' if self.passed else 'FAIL'}")
        out.append(f"elapsed: {self.elapsed_s:.3f}s")
        return "\n".join(out) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        records = self.rows or [{k: v for k, v in c.items()} for c in self.checks]
        if records:
            w = csv.DictWriter(buf, fieldnames=list(records[0]), lineterminator="\n")
            w.writeheader()
            w.writerows(records)
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        return {"text": self.to_text, "json": lambda: self.to_json() + "\n", "csv": self.to_csv}[fmt]()


def _cap(args, default: int) -> int:
    cap = args.cap if args.cap is not None else default
    if cap > default:
        print(f"warning: cap raised to {cap} (default {default}); cost grows like n^n per element "
              f"and the square of that for tables", file=sys.stderr)
    return cap


def _degree(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise UsageError(f"expected a degree, got {text!r}")
    if n < 1:
        raise UsageError("degree must be at least 1")
    return n


def _element(text: str, family: str, n: int):
    try:
        x = parse_element(text, family)
    except ValueError as e:
        raise UsageError(str(e))
    if x.n != n:
        raise UsageError(f"{text} has degree {x.n}, expected {n}")
    return x


def cmd_idempotents(args) -> Report:
    fam = args.family
    if fam == "B":
        if len(args.rest) != 1:
            raise UsageError("usage: idempotents B <b^m a^k> [--chain J]")
        try:
            alpha = bc.parse_bicyclic(args.rest[0])
        except ValueError as e:
            raise UsageError(str(e))
        r = Report("idempotents", {"family": "B", "a": str(alpha), "chain": args.chain})
        chain = bc.idempotent_chain(alpha, args.chain)
        r.payload["idempotents"] = [str(e) for e in chain]
        r.add_check("each chain element is a deformed idempotent",
                    all(bc.is_deformed_idempotent(e, alpha) for e in chain), len(chain))
        r.add_check("chain is decreasing: eps_i <= eps_j iff i >= j",
                    all(bc.idempotent_leq_direct(alpha, i, j) == (i >= j)
                        for i in range(len(chain)) for j in range(len(chain))), len(chain) ** 2)
        return r
    if len(args.rest) != 2:
        raise UsageError(f"usage: idempotents {fam} <n> <element>")
    n = _degree(args.rest[0])
    a = _element(args.rest[1], fam, n)
    r = Report("idempotents", {"family": fam, "n": n, "a": str(a)})
    if fam == "IS":
        elements = enumerate_elements("IS", n, _cap(args, ELEMENT_CAP))
        brute = deformed_idempotents(elements, a)
        formula = idempotent_count_formula(a)
        r.payload.update(idempotents=[str(e) for e in brute], count=len(brute), rank=rank(a), formula=formula)
        r.add_check("brute-force count equals 2^rank", len(brute) == formula, len(elements),
                    f"{len(brute)} vs 2^{rank(a)} = {formula}")
        r.add_check("constructed idempotents equal the brute-force set",
                    set(enumerate_idempotents_isn(a)) == set(brute), len(brute))
    else:
        t = build_deformed_table("T", n, a, cap=_cap(args, TABLE_CAP))
        idem = sorted(idempotents_of_table(t))
        r.payload.update(idempotents=[t.elements[i] for i in idem], count=len(idem))
        diag = deformed_idempotents(enumerate_elements("T", n, max(n, ELEMENT_CAP)), a)
        r.add_check("table scan agrees with direct evaluation",
                    [t.elements[i] for i in idem] == [str(e) for e in diag], len(t))
    return r


def cmd_classify(args) -> Report:
    fam, n = args.family, args.n
    elements = enumerate_elements(fam, n, _cap(args, ELEMENT_CAP))
    r = Report("classify", {"family": fam, "n": n})
    if fam == "IS":
        classes = partition_into_classes(elements, isn_isomorphic)
        for cls in classes:
            r.rows.append({"rank": rank(cls[0]), "representative": str(cls[0]), "elements": len(cls)})
        expected = isn_class_count(n)
        r.add_check(f"class count equals n+1 = {expected}", len(classes) == expected, len(elements))
    else:
        classes = partition_into_classes(elements, tn_isomorphic)
        for cls in classes:
            t = type_of(cls[0])
            r.rows.append({"type": str(t), "partition": "+".join(map(str, t.as_partition())),
                           "representative": str(cls[0]), "elements": len(cls),
                           "count_of_type": count_of_type(t, n)})
        expected = partition_count(n)
        r.add_check(f"class count equals p(n) = {expected}", len(classes) == expected, len(elements))
        r.add_check("class sizes equal count_of_type",
                    all(row["elements"] == row["count_of_type"] for row in r.rows), len(classes))
    r.payload["classes"] = len(classes)
    return r


def cmd_witness(args) -> Report:
    fam, n = args.family, args.n
    a = _element(args.a, fam, n)
    b = _element(args.b, fam, n)
    r = Report("witness", {"family": fam, "n": n, "a": str(a), "b": str(b)})
    if fam == "IS":
        w, iso_map = isn_witness(a, b), isn_iso_map
    else:
        w, iso_map = tn_witness(a, b), tn_iso_map
    r.payload.update(w.to_record())
    r.add_check("b = tau a pi", w.is_valid(), n)
    if args.full_check:
        cap = _cap(args, TABLE_CAP)
        ta = build_deformed_table(fam, n, a, cap=cap)
        tb = build_deformed_table(fam, n, b, cap=cap)
        elements = enumerate_elements(fam, n, cap)
        index = {e: i for i, e in enumerate(elements)}
        h = [index[iso_map(w, x)] for x in elements]
        r.add_check("f(x) = pi^-1 x tau^-1 is a bijective homomorphism", verify_isomorphism(ta, tb, h),
                    len(elements) ** 2)
    return r


def cmd_verify(args) -> Report:
    if args.suite not in SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; expected one of {', '.join(SUITES)}")
    if args.n is not None:
        table_suites = {"thm1", "thm2", "oracle-crosscheck"}
        cap = _cap(args, TABLE_CAP if args.suite in table_suites else ELEMENT_CAP)
        if args.n > cap:
            raise CapExceeded(args.n, cap)
    r = Report("verify", {"suite": args.suite, "n": args.n, "grid": args.grid, "samples": args.samples,
                          "seed": args.seed})
    r.payload["description"] = SUITES[args.suite]
    for c in run_suite(args.suite, n=args.n, grid=args.grid, samples=args.samples, seed=args.seed,
                       jobs=args.jobs):
        r.checks.append(c.as_dict())
    return r


def cmd_count(args) -> Report:
    n = args.n
    if n > EXACT_CAP:
        raise CapExceeded(n, EXACT_CAP)
    r = Report("count", {"n": n})
    total = 0
    types = enumerate_types(n)
    for t in types:
        c = count_of_type(t, n)
        total += c
        r.rows.append({"partition": "+".join(map(str, t.as_partition())), "type": str(t), "count": c})
    r.payload.update(total=total, classes=len(types), p_n=partition_count(n))
    r.add_check(f"total equals n^n = {n ** n}", total == n**n, len(types))
    r.add_check("number of types equals p(n)", len(types) == partition_count(n), len(types))
    return r


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=["text", "json", "csv"], default=argparse.SUPPRESS)
    common.add_argument("--seed", type=int, default=argparse.SUPPRESS)
    common.add_argument("--cap", type=int, default=argparse.SUPPRESS)
    common.add_argument("--jobs", type=int, default=argparse.SUPPRESS)

    p = argparse.ArgumentParser(prog="sandwich", parents=[common],
                                description="Classify and verify deformed multiplication semigroups.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("idempotents", parents=[common], help="list idempotents of (S, *_a)")
    s.add_argument("family", choices=["T", "IS", "B"])
    s.add_argument("rest", nargs="+", help="<n> <element> for T/IS; <b^m a^k> for B")
    s.add_argument("--chain", type=int, default=5, help="chain prefix length for B")
    s.set_defaults(func=cmd_idempotents)

    s = sub.add_parser("classify", parents=[common], help="partition sandwich elements into isomorphism classes")
    s.add_argument("family", choices=["T", "IS"])
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_classify)

    s = sub.add_parser("witness", parents=[common], help="construct tau, pi with b = tau a pi")
    s.add_argument("family", choices=["T", "IS"])
    s.add_argument("n", type=int)
    s.add_argument("a")
    s.add_argument("b")
    s.add_argument("--full-check", action="store_true", help="verify the induced isomorphism on full tables")
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("verify", parents=[common], help="run a verification suite")
    s.add_argument("suite", help=", ".join(SUITES))
    s.add_argument("--n", type=int)
    s.add_argument("--grid", type=int)
    s.add_argument("--samples", type=int)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("count", parents=[common], help="transformations per type")
    s.add_argument("n", type=int)
    s.set_defaults(func=cmd_count)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    for name, default in (("format", "text"), ("seed", DEFAULT_SEED), ("cap", None), ("jobs", 1)):
        if not hasattr(args, name):
            setattr(args, name, default)
    start = time.perf_counter()
    try:
        report = args.func(args)
    except (UsageError, CapExceeded) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (TypeMismatch, RankMismatch) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_FAIL
    report.elapsed_s = round(time.perf_counter() - start, 6)
    sys.stdout.write(report.render(args.format))
    return EXIT_OK if report.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
