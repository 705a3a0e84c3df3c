"""Exhaustive verification suites, one per classification result.

Each suite returns a list of ``Check`` records; a suite passes when every
check does.  The CLI ``verify`` subcommand and the acceptance tests both
run these.
"""

from __future__ import annotations

import itertools
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional

from . import bicyclic as bc
from .deformed_core import (
    build_deformed_table,
    deformed_idempotents,
    idempotents_of_table,
)
from .finite_maps import (
    FiniteTransformation,
    PartialInjection,
    Permutation,
    compose,
    enumerate_elements,
    rank,
    type_of,
)
from .iso_oracle import BudgetExceeded, find_isomorphism, verify_isomorphism
from .isn_classify import (
    enumerate_idempotents_isn,
    idempotent_count_formula,
    isn_class_count,
    isn_iso_map,
    isn_isomorphic,
    isn_witness,
)
from .tn_classify import (
    class_sizes_from_type,
    count_of_type,
    enumerate_types,
    eq1_class_size,
    partition_count,
    recover_type_from_class_sizes,
    sim_a_classes,
    tn_iso_map,
    tn_isomorphic,
    tn_witness,
)

DEFAULT_SEED = 20030512


@dataclass
class Check:
    name: str
    passed: bool
    checked: int = 0
    detail: str = ""
    counterexample: Optional[str] = None

    def as_dict(self) -> dict:
        return asdict(self)


def _check(name, failures, checked, detail="") -> Check:
    failures = list(failures)
    return Check(name, not failures, checked, detail, failures[0] if failures else None)


def _pmap(fn: Callable, items: list, jobs: int) -> list:
    if jobs <= 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


_ELEMENT_CLASS = {"T": FiniteTransformation, "IS": PartialInjection}


@lru_cache(maxsize=512)
def _cached_table(family: str, images: tuple):
    a = _ELEMENT_CLASS[family](images)
    return build_deformed_table(family, a.n, a, cap=max(5, a.n))


def table_for(family: str, a):
    """Deformed table of (family_n, *_a), memoised across suites."""
    return _cached_table(family, a.images)


def partition_into_classes(elements: Iterable, related: Callable) -> list[list]:
    """Group elements into classes of ``related``, comparing against class representatives."""
    classes: list[list] = []
    for e in elements:
        for cls in classes:
            if related(cls[0], e):
                cls.append(e)
                break
        else:
            classes.append([e])
    return classes


# --- IS_n -----------------------------------------------------------------


def _lemma1_one(alpha) -> Optional[str]:
    elements = enumerate_elements("IS", alpha.n)
    brute = set(deformed_idempotents(elements, alpha))
    formula = idempotent_count_formula(alpha)
    constructed = enumerate_idempotents_isn(alpha)
    if len(brute) != formula:
        return f"alpha={alpha}: brute force {len(brute)} idempotents, formula {formula}"
    if set(constructed) != brute or len(constructed) != formula:
        return f"alpha={alpha}: constructed idempotents differ from brute force"
    if alpha.n <= 3:
        t = table_for("IS", alpha)
        via_table = {t.elements[i] for i in idempotents_of_table(t)}
        if via_table != {str(e) for e in brute}:
            return f"alpha={alpha}: table scan disagrees with diagonal scan"
    return None


def verify_lemma1(n: int = 4, jobs: int = 1) -> list[Check]:
    alphas = enumerate_elements("IS", n)
    fails = [f for f in _pmap(_lemma1_one, alphas, jobs) if f]
    return [_check(f"lemma1: idempotents of (IS_{n}, *_alpha) number 2^rank", fails, len(alphas))]


def verify_thm1(n: int = 3, samples: int = 5, seed: int = DEFAULT_SEED, jobs: int = 1) -> list[Check]:
    elements = enumerate_elements("IS", n)
    index = {e: i for i, e in enumerate(elements)}
    tables = {e: table_for("IS", e) for e in elements}
    idem_counts = {e: len(idempotents_of_table(tables[e])) for e in elements}

    suff_fail, suff_n = [], 0
    sep_fail, sep_n = [], 0
    for alpha, beta in itertools.product(elements, repeat=2):
        if isn_isomorphic(alpha, beta):
            suff_n += 1
            w = isn_witness(alpha, beta)
            h = [index[isn_iso_map(w, xi)] for xi in elements]
            if not w.is_valid() or not verify_isomorphism(tables[alpha], tables[beta], h):
                suff_fail.append(f"alpha={alpha}, beta={beta}, tau={w.tau}, pi={w.pi}")
        else:
            sep_n += 1
            if idem_counts[alpha] == idem_counts[beta]:
                sep_fail.append(f"alpha={alpha}, beta={beta}: equal idempotent counts")

    rng = random.Random(seed)
    cross = [(a, b) for a, b in itertools.product(elements, repeat=2) if rank(a) != rank(b)]
    sampled = rng.sample(cross, min(samples, len(cross)))
    oracle_fail = []
    for a, b in sampled:
        if find_isomorphism(tables[a], tables[b]) is not None:
            oracle_fail.append(f"oracle found an isomorphism for ranks {rank(a)} vs {rank(b)}: {a}, {b}")

    classes = partition_into_classes(elements, isn_isomorphic)
    cls_fail = [] if len(classes) == isn_class_count(n) else [f"{len(classes)} classes, expected {n + 1}"]
    return [
        _check(f"thm1 sufficiency: f(xi) = pi^-1 xi tau^-1 is an isomorphism on IS_{n}", suff_fail, suff_n,
               f"{suff_n} same-rank pairs x {len(elements)}^2 products"),
        _check(f"thm1 necessity: different ranks give different idempotent counts on IS_{n}", sep_fail, sep_n),
        _check("thm1 necessity: oracle rejects sampled cross-rank pairs", oracle_fail, len(sampled)),
        _check(f"corollary: IS_{n} gives n+1 = {n + 1} classes", cls_fail, len(elements),
               f"{len(classes)} classes"),
    ]


def verify_isn_classes(n: int) -> list[Check]:
    elements = enumerate_elements("IS", n)
    classes = partition_into_classes(elements, isn_isomorphic)
    fails = [] if len(classes) == isn_class_count(n) else [f"{len(classes)} classes, expected {n + 1}"]
    return [_check(f"corollary: IS_{n} gives n+1 = {n + 1} classes", fails, len(elements), f"{len(classes)} classes")]


# --- T_n ------------------------------------------------------------------


def _lemma2_one(a: FiniteTransformation) -> Optional[str]:
    n = a.n
    sc = sim_a_classes(a)
    r = rank(a)
    for y, members in sc.classes.items():
        if len(members) != eq1_class_size(a, y):
            return f"a={a}: class of y={y} has {len(members)} members, product formula {eq1_class_size(a, y)}"
    if sc.multiset.total_mass() != n**n:
        return f"a={a}: classes cover {sc.multiset.total_mass()} elements, expected {n ** n}"
    if sc.multiset.class_count() != r**n:
        return f"a={a}: {sc.multiset.class_count()} classes, expected rank^n = {r ** n}"
    if class_sizes_from_type(type_of(a), n) != sc.multiset:
        return f"a={a}: multiset differs from the type prediction"
    return None


def _lemma2_definition(a: FiniteTransformation) -> Optional[str]:
    """Compare x ~ y (x *_a u == y *_a u for all u) with xa == ya via the deformed table."""
    t = table_for("T", a)
    elements = enumerate_elements("T", a.n)
    by_row: dict = {}
    for i, x in enumerate(elements):
        by_row.setdefault(t.product[i].tobytes(), set()).add(x)
    by_fiber = {frozenset(v) for v in sim_a_classes(a).classes.values()}
    if {frozenset(v) for v in by_row.values()} != by_fiber:
        return f"a={a}: classes of the defining relation differ from the fibers of x -> xa"
    return None


def verify_lemma2_eq1(n: int = 4, definition_max: int = 3, jobs: int = 1) -> list[Check]:
    elements = enumerate_elements("T", n)
    fails = [f for f in _pmap(_lemma2_one, elements, jobs) if f]
    checks = [_check(f"lemma2/eq1: class sizes equal block-size products on T_{n}", fails, len(elements))]
    if n <= definition_max:
        dfails = [f for f in _pmap(_lemma2_definition, elements, jobs) if f]
        checks.append(_check(f"lemma2: x ~ y for all u iff xa == ya on T_{n}", dfails, len(elements),
                             "n = 1 holds trivially" if n == 1 else ""))
    return checks


def _recovery_one(a: FiniteTransformation) -> Optional[str]:
    try:
        got = recover_type_from_class_sizes(sim_a_classes(a).multiset, a.n)
    except ValueError as e:
        return f"a={a}: {e}"
    if got != type_of(a):
        return f"a={a}: recovered {got}, actual {type_of(a)}"
    return None


def verify_type_recovery(n: int = 4, jobs: int = 1) -> list[Check]:
    elements = enumerate_elements("T", n)
    fails = [f for f in _pmap(_recovery_one, elements, jobs) if f]
    return [_check(f"type recovery: class sizes determine the type on T_{n}", fails, len(elements),
                   f"{len(elements)} round-trips")]


def _random_permutation(rng: random.Random, n: int) -> Permutation:
    p = list(range(1, n + 1))
    rng.shuffle(p)
    return Permutation(tuple(p))


def verify_thm2(n: int = 3, samples: int = 10, seed: int = DEFAULT_SEED) -> list[Check]:
    elements = enumerate_elements("T", n)
    index = {e: i for i, e in enumerate(elements)}
    tables = {e: table_for("T", e) for e in elements}
    multisets = {e: sim_a_classes(e).multiset for e in elements}

    suff_fail, suff_n, sep_fail, sep_n, oracle_fail = [], 0, [], 0, []
    for a, b in itertools.product(elements, repeat=2):
        same = tn_isomorphic(a, b)
        if same:
            suff_n += 1
            w = tn_witness(a, b)
            h = [index[tn_iso_map(w, x)] for x in elements]
            if not w.is_valid() or not verify_isomorphism(tables[a], tables[b], h):
                suff_fail.append(f"a={a}, b={b}, tau={w.tau}, pi={w.pi}")
        else:
            sep_n += 1
            if multisets[a] == multisets[b]:
                sep_fail.append(f"a={a}, b={b}: equal class-size multisets")
        try:
            found = find_isomorphism(tables[a], tables[b]) is not None
        except BudgetExceeded as e:
            oracle_fail.append(f"a={a}, b={b}: {e}")
            continue
        if found != same:
            oracle_fail.append(f"a={a}, b={b}: oracle says {found}, type criterion says {same}")

    checks = [
        _check(f"thm2 sufficiency: constructed f is an isomorphism for same-type pairs of T_{n}",
               suff_fail, suff_n, f"{suff_n} pairs x {len(elements)}^2 products"),
        _check(f"thm2 necessity: class-size multisets separate cross-type pairs of T_{n}", sep_fail, sep_n),
        _check(f"thm2: oracle agrees with the type criterion on all pairs of T_{n}", oracle_fail,
               len(elements) ** 2),
    ]
    if samples:
        checks.append(_thm2_sampled(n + 1, samples, seed))
    return checks


def _thm2_sampled(n: int, samples: int, seed: int) -> Check:
    """Oracle vs criterion on random pairs of T_n, half of them conjugated to force equal type."""
    rng = random.Random(seed)
    fails = []
    for s in range(samples):
        a = FiniteTransformation(tuple(rng.randint(1, n) for _ in range(n)))
        if s % 2 == 0:
            b = compose(compose(_random_permutation(rng, n), a), _random_permutation(rng, n))
        else:
            b = FiniteTransformation(tuple(rng.randint(1, n) for _ in range(n)))
        same = tn_isomorphic(a, b)
        try:
            found = find_isomorphism(table_for("T", a), table_for("T", b)) is not None
        except BudgetExceeded as e:
            fails.append(f"a={a}, b={b}: {e}")
            continue
        if found != same:
            fails.append(f"a={a}, b={b}: oracle says {found}, type criterion says {same}")
    return _check(f"thm2: oracle agrees with the type criterion on {samples} sampled pairs of T_{n}",
                  fails, samples)


def verify_prop1(n: int = 5, sum_max: int = 6, classify_max: int = 4) -> list[Check]:
    count_fail, count_n = [], 0
    for d in range(1, n + 1):
        brute = Counter(type_of(a) for a in enumerate_elements("T", d, cap=max(5, d)))
        for t in enumerate_types(d):
            count_n += 1
            if count_of_type(t, d) != brute.get(t, 0):
                count_fail.append(f"n={d}, type {t}: formula {count_of_type(t, d)}, brute force {brute.get(t, 0)}")
        if set(brute) != set(enumerate_types(d)):
            count_fail.append(f"n={d}: realized types differ from the partitions of n")
    sum_fail = []
    for d in range(1, sum_max + 1):
        total = sum(count_of_type(t, d) for t in enumerate_types(d))
        if total != d**d:
            sum_fail.append(f"n={d}: sum {total} != {d ** d}")
    cls_fail = []
    for d in range(1, classify_max + 1):
        k = len(partition_into_classes(enumerate_elements("T", d), tn_isomorphic))
        if k != partition_count(d) or k != len(enumerate_types(d)):
            cls_fail.append(f"n={d}: {k} classes, p(n) = {partition_count(d)}")
    return [
        _check(f"prop1: count_of_type matches brute force for n <= {n}", count_fail, count_n),
        _check(f"prop1: counts sum to n^n for n <= {sum_max}", sum_fail, sum_max),
        _check(f"corollary: T_n gives p(n) classes for n <= {classify_max}", cls_fail, classify_max),
    ]


# --- bicyclic -------------------------------------------------------------


def verify_prop2(grid: int = 4, window: int = 12, chain: int = 8) -> list[Check]:
    char_fail, char_n = [], 0
    for m, k in itertools.product(range(grid + 1), repeat=2):
        alpha = bc.BicyclicElement(m, k)
        for t, s in itertools.product(range(window + 1), repeat=2):
            char_n += 1
            xi = bc.BicyclicElement(t, s)
            on_chain = any((t, s) == (k + i, m + i) for i in range(window + 1))
            if bc.is_deformed_idempotent(xi, alpha) != on_chain:
                char_fail.append(f"alpha={alpha}, xi={xi}")
    order_fail, order_n = [], 0
    for m, k in itertools.product(range(grid + 1), repeat=2):
        alpha = bc.BicyclicElement(m, k)
        for i, j in itertools.product(range(chain + 1), repeat=2):
            order_n += 1
            if bc.idempotent_leq_direct(alpha, i, j) != bc.idempotent_leq(i, j):
                order_fail.append(f"alpha={alpha}, i={i}, j={j}")
            le, ge = bc.idempotent_leq_direct(alpha, i, j), bc.idempotent_leq_direct(alpha, j, i)
            if not (le or ge):
                order_fail.append(f"alpha={alpha}: eps_{i}, eps_{j} incomparable")
    return [
        _check(f"prop2: idempotents are exactly b^(k+i) a^(m+i) (m,k <= {grid}, t,s <= {window})", char_fail, char_n),
        _check(f"prop2: eps_i <= eps_j iff i >= j, a total order (i,j <= {chain})", order_fail, order_n),
    ]


def verify_thm3(grid: int = 5, indices: tuple = (0, 1, 2)) -> list[Check]:
    card_fail, card_n = [], 0
    closed_fail = []
    triples = {}
    rt_fail = []
    for m, k in itertools.product(range(grid + 1), repeat=2):
        alpha = bc.BicyclicElement(m, k)
        for i in indices:
            card_n += 1
            members = list(bc.pq_window(alpha, i))
            if len(members) != bc.pq_cardinality(alpha, i):
                card_fail.append(f"alpha={alpha}, i={i}: {len(members)} members, formula {bc.pq_cardinality(alpha, i)}")
            for t, s in itertools.product(range(k + i + 3), range(m + i + 3)):
                xi = bc.BicyclicElement(t, s)
                if bc.in_P(xi, alpha, i) != bc.in_P_closed(xi, alpha, i) or bc.in_Q(xi, alpha, i) != bc.in_Q_closed(xi, alpha, i):
                    closed_fail.append(f"alpha={alpha}, i={i}, xi={xi}")
        triple = bc.cardinality_triple(alpha, direct=True)
        triples.setdefault(triple, []).append(alpha)
        try:
            if bc.recover_sandwich(*triple) != alpha:
                rt_fail.append(f"alpha={alpha}: recovered {bc.recover_sandwich(*triple)}")
        except ValueError as e:
            rt_fail.append(f"alpha={alpha}: {e}")
    dup = [f"{v} share {k}" for k, v in triples.items() if len(v) > 1]
    n_alpha = (grid + 1) ** 2
    return [
        _check(f"thm3: |P_i cap Q_i| = (k+i)(m+i) by direct enumeration (m,k <= {grid})", card_fail, card_n,
               f"{n_alpha} sandwich elements"),
        _check("thm3: direct P/Q membership matches the closed form", closed_fail, card_n),
        _check("thm3: recover_sandwich round-trips every alpha", rt_fail, n_alpha),
        _check("thm3: cardinality triples are pairwise distinct", dup, n_alpha),
    ]


def verify_thm4(exp: int = 6, grid: int = 3, random_cases: int = 10_000, seed: int = DEFAULT_SEED,
                random_max: int = 1000) -> list[Check]:
    phi = bc.anti_iso_phi
    exh_fail, exh_n = [], 0
    grid_elems = [bc.BicyclicElement(x, y) for x, y in itertools.product(range(exp + 1), repeat=2)]
    for m, k in itertools.product(range(grid + 1), repeat=2):
        alpha = bc.BicyclicElement(m, k)
        beta = bc.binv(alpha)
        if phi(alpha) != beta:
            exh_fail.append(f"phi({alpha}) != alpha^-1")
        for xi, eta in itertools.product(grid_elems, repeat=2):
            exh_n += 1
            if phi(bc.deformed_mul(xi, alpha, eta)) != bc.deformed_mul(phi(eta), beta, phi(xi)):
                exh_fail.append(f"alpha={alpha}, xi={xi}, eta={eta}")
    rng = random.Random(seed)
    rnd_fail = []
    for _ in range(random_cases):
        alpha, xi, eta = (bc.BicyclicElement(rng.randint(0, random_max), rng.randint(0, random_max)) for _ in range(3))
        if phi(bc.deformed_mul(xi, alpha, eta)) != bc.deformed_mul(phi(eta), bc.binv(alpha), phi(xi)):
            rnd_fail.append(f"alpha={alpha}, xi={xi}, eta={eta}")
    inv_fail = [f"xi={x}" for x in grid_elems if phi(phi(x)) != x or bc.bmul(bc.bmul(x, bc.binv(x)), x) != x]
    return [
        _check(f"thm4: phi(xi *_alpha eta) = phi(eta) *_alpha^-1 phi(xi) (exponents <= {exp}, m,k <= {grid})",
               exh_fail, exh_n),
        _check(f"thm4: same identity on {random_cases} random cases", rnd_fail, random_cases),
        _check("thm4: phi is an involution and x x^-1 x = x", inv_fail, len(grid_elems)),
    ]


# --- oracle ---------------------------------------------------------------


def verify_oracle(relabels: int = 100, n_max: int = 3, seed: int = DEFAULT_SEED) -> list[Check]:
    rng = random.Random(seed)
    fails = []
    unsound = []
    for _ in range(relabels):
        family = rng.choice(["T", "IS"])
        n = rng.randint(1, n_max)
        a = rng.choice(enumerate_elements(family, n))
        t = table_for(family, a)
        perm = list(range(len(t)))
        rng.shuffle(perm)
        t2 = t.relabel(perm)
        try:
            h = find_isomorphism(t, t2)
        except BudgetExceeded as e:
            fails.append(f"{family}_{n}, a={a}: {e}")
            continue
        if h is None:
            fails.append(f"{family}_{n}, a={a}: no isomorphism found for a relabeling")
        elif not verify_isomorphism(t, t2, h):
            unsound.append(f"{family}_{n}, a={a}: returned mapping fails verification")
    return [
        _check(f"oracle: finds an isomorphism for {relabels} random relabelings (n <= {n_max})", fails, relabels),
        _check("oracle: every returned mapping is a verified isomorphism", unsound, relabels),
    ]


SUITES = {
    "lemma1": "IS_n idempotent count 2^rank",
    "thm1": "IS_n isomorphic iff equal rank",
    "lemma2-eq1": "~_a classes and their sizes on T_n",
    "type-recovery": "type recovered from class sizes",
    "thm2": "T_n isomorphic iff same type",
    "prop1": "count of transformations of a type",
    "prop2": "bicyclic deformed idempotents",
    "thm3": "bicyclic P/Q cardinalities",
    "thm4": "bicyclic anti-isomorphism",
    "oracle-crosscheck": "isomorphism oracle soundness",
}


def run_suite(name: str, n: Optional[int] = None, grid: Optional[int] = None, samples: Optional[int] = None,
              seed: int = DEFAULT_SEED, jobs: int = 1) -> list[Check]:
    """Dispatch by suite id; ``None`` bounds fall back to each suite's default."""
    kw = lambda **d: {k: v for k, v in d.items() if v is not None}
    if name == "lemma1":
        return verify_lemma1(**kw(n=n), jobs=jobs)
    if name == "thm1":
        return verify_thm1(**kw(n=n, samples=samples), seed=seed)
    if name == "lemma2-eq1":
        return verify_lemma2_eq1(**kw(n=n), jobs=jobs)
    if name == "type-recovery":
        return verify_type_recovery(**kw(n=n), jobs=jobs)
    if name == "thm2":
        return verify_thm2(**kw(n=n, samples=samples), seed=seed)
    if name == "prop1":
        return verify_prop1(**kw(n=n))
    if name == "prop2":
        return verify_prop2(**kw(grid=grid))
    if name == "thm3":
        return verify_thm3(**kw(grid=grid))
    if name == "thm4":
        return verify_thm4(**kw(grid=grid, random_cases=samples), seed=seed)
    if name == "oracle-crosscheck":
        return verify_oracle(**kw(relabels=samples, n_max=n), seed=seed)
    raise KeyError(f"unknown suite {name!r}; expected one of {', '.join(SUITES)}")
