"""Deformed full transformation semigroups (T_n, *_a).

The isomorphism class of (T_n, *_a) is determined by the type of ``a``.
The type can be read back from the sizes of the classes of
``x ~ y  iff  xa == ya``, which is what ``recover_type_from_class_sizes``
does.
"""

from __future__ import annotations

import math
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Optional

from .finite_maps import (
    DEFAULT_CAP,
    DegreeMismatch,
    FiniteTransformation,
    Permutation,
    TypeVector,
    compose,
    enumerate_elements,
    inverse,
    kernel_partition,
    type_of,
)
from .isn_classify import extend_to_permutation

# n^n must fit in a signed 64-bit integer
EXACT_CAP = 15


class InconsistentMultiset(ValueError):
    pass


class TypeMismatch(ValueError):
    pass


@dataclass(frozen=True)
class ClassSizeMultiset:
    """Sizes of the ~_a classes as sorted (size, count) pairs."""

    n: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        pairs = tuple(sorted((int(s), int(c)) for s, c in self.pairs))
        sizes = [s for s, _ in pairs]
        if len(set(sizes)) != len(sizes):
            raise ValueError("class sizes must be distinct")
        if any(s <= 0 or c <= 0 for s, c in pairs):
            raise ValueError("sizes and counts must be positive")
        object.__setattr__(self, "pairs", pairs)

    @classmethod
    def from_counts(cls, n: int, counts: dict[int, int]) -> "ClassSizeMultiset":
        return cls(n, tuple((s, c) for s, c in counts.items() if c))

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)

    def count(self, size: int) -> int:
        return self.as_dict().get(size, 0)

    def total_mass(self) -> int:
        return sum(s * c for s, c in self.pairs)

    def class_count(self) -> int:
        return sum(c for _, c in self.pairs)

    def dumps(self) -> str:
        return "".join(f"{s}:{c}\n" for s, c in self.pairs)

    @classmethod
    def loads(cls, text: str, n: int) -> "ClassSizeMultiset":
        pairs = []
        for line in text.splitlines():
            line = line.strip()
            if not line:
                continue
            s, c = line.split(":")
            pairs.append((int(s), int(c)))
        return cls(n, tuple(pairs))


@dataclass(frozen=True)
class SimClasses:
    a: FiniteTransformation
    # key: the common value y = x*a of the class; value: members in enumeration order
    classes: dict
    multiset: ClassSizeMultiset


@dataclass(frozen=True)
class TnWitness:
    """Permutations with ``b == compose(compose(tau, a), pi)``."""

    a: FiniteTransformation
    b: FiniteTransformation
    tau: Permutation
    pi: Permutation

    def is_valid(self) -> bool:
        return compose(compose(self.tau, self.a), self.pi) == self.b

    def to_record(self) -> dict:
        return {k: str(getattr(self, k)) for k in ("a", "b", "tau", "pi")}


def _check_degree(*xs):
    ns = {x.n for x in xs}
    if len(ns) != 1:
        raise DegreeMismatch(f"degrees differ: {sorted(ns)}")


def sim_a_related(x: FiniteTransformation, y: FiniteTransformation, a: FiniteTransformation) -> bool:
    _check_degree(x, y, a)
    return compose(x, a) == compose(y, a)


def eq1_class_size(a: FiniteTransformation, y: FiniteTransformation) -> int:
    """Number of x with xa == y, for y with image inside ran(a)."""
    ker = kernel_partition(a)
    return math.prod(ker.size(v) for v in y.images)


def sim_a_classes(a: FiniteTransformation, cap: int = DEFAULT_CAP) -> SimClasses:
    """Fibers of x -> xa over all of T_n."""
    classes: dict[FiniteTransformation, list] = {}
    for x in enumerate_elements("T", a.n, cap):
        classes.setdefault(compose(x, a), []).append(x)
    counts = Counter(len(v) for v in classes.values())
    return SimClasses(a, classes, ClassSizeMultiset.from_counts(a.n, counts))


def _product_profile(n: int, sizes: dict[int, int], target: Optional[int] = None) -> dict[int, int]:
    """Count length-n tuples of image points by the product of their block sizes.

    ``sizes`` maps a block size to how many image points have it.  With
    ``target`` given, only partial products dividing it are kept.
    """
    states = {1: 1}
    for _ in range(n):
        nxt: dict[int, int] = {}
        for prod, ways in states.items():
            for s, mult in sizes.items():
                if not mult:
                    continue
                p = prod * s
                if target is not None and target % p:
                    continue
                nxt[p] = nxt.get(p, 0) + ways * mult
        states = nxt
    return states


def class_sizes_from_type(t: TypeVector, n: Optional[int] = None) -> ClassSizeMultiset:
    """The ~_a class-size multiset predicted by the class-size product formula."""
    n = t.n if n is None else n
    sizes = {k: t[k] for k in range(1, n + 1) if t[k]}
    return ClassSizeMultiset.from_counts(n, _product_profile(n, sizes))


def _exact_root(value: int, n: int) -> int:
    r = round(value ** (1.0 / n))
    for cand in (r - 1, r, r + 1):
        if cand >= 0 and cand**n == value:
            return cand
    raise InconsistentMultiset(f"{value} is not a perfect {n}-th power")


def recover_type_from_class_sizes(M: ClassSizeMultiset, n: int) -> TypeVector:
    """Reconstruct the type of ``a`` from the ~_a class sizes alone.

    The smallest class has size m^n and there are alpha_m^n of them.  For
    each larger l, the classes of size l*m^(n-1) are those whose block-size
    tuple is either one l and (n-1) m's, or made only of sizes in [m, l);
    the second kind is counted from the already known entries and the
    remainder gives alpha_l.  The result is checked against M in full.
    """
    if n < 1:
        raise ValueError("degree must be at least 1")
    if n > EXACT_CAP:
        raise ValueError(f"n={n} exceeds the exact-arithmetic cap {EXACT_CAP}")
    counts = M.as_dict()
    if not counts:
        raise InconsistentMultiset("empty multiset")
    m = _exact_root(min(counts), n)
    if not 1 <= m <= n:
        raise InconsistentMultiset(f"minimum block size {m} outside 1..{n}")
    alpha = [0] * (n + 1)
    alpha[m] = _exact_root(counts[min(counts)], n)
    if alpha[m] == 0:
        raise InconsistentMultiset("no classes of minimal size")
    denom = n * alpha[m] ** (n - 1)
    for l in range(m + 1, n + 1):
        target = l * m ** (n - 1)
        C = counts.get(target, 0)
        smaller = {s: alpha[s] for s in range(m, l) if alpha[s]}
        A = _product_profile(n, smaller, target).get(target, 0)
        q, r = divmod(C - A, denom)
        if r or q < 0:
            raise InconsistentMultiset(f"cannot solve for alpha_{l}: C={C}, A={A}, step={denom}")
        alpha[l] = q
    t = TypeVector(tuple(alpha[1:]))
    if not t.is_valid():
        raise InconsistentMultiset(f"recovered {t} has weight {t.weight()} != {n}")
    if class_sizes_from_type(t, n) != ClassSizeMultiset(n, M.pairs):
        raise InconsistentMultiset(f"multiset is not realized by type {t}")
    return t


def tn_isomorphic(a: FiniteTransformation, b: FiniteTransformation) -> bool:
    _check_degree(a, b)
    return type_of(a) == type_of(b)


def _blocks_by_size(a: FiniteTransformation) -> dict[int, list[tuple[int, tuple[int, ...]]]]:
    groups: dict[int, list] = {}
    for tag, block in kernel_partition(a).blocks:
        groups.setdefault(len(block), []).append((tag, block))
    for lst in groups.values():
        lst.sort(key=lambda tb: tb[1][0])
    return groups


def tn_witness(a: FiniteTransformation, b: FiniteTransformation) -> TnWitness:
    if not tn_isomorphic(a, b):
        raise TypeMismatch(f"type mismatch {type_of(a)} vs {type_of(b)}")
    n = a.n
    ga, gb = _blocks_by_size(a), _blocks_by_size(b)
    tau: dict[int, int] = {}
    pi_part: dict[int, int] = {}
    for size, b_blocks in gb.items():
        for (tb, bb), (ta, ba) in zip(b_blocks, ga[size]):
            tau.update(zip(bb, ba))
            pi_part[ta] = tb
    w = TnWitness(
        a,
        b,
        Permutation(tuple(tau[p] for p in range(1, n + 1))),
        extend_to_permutation(n, pi_part),
    )
    assert w.is_valid(), w
    return w


def tn_iso_map(w: TnWitness, x: FiniteTransformation) -> FiniteTransformation:
    """f(x) = pi^-1 x tau^-1, an isomorphism (T_n, *_a) -> (T_n, *_b)."""
    return compose(compose(inverse(w.pi), x), inverse(w.tau))


def count_of_type(t: TypeVector, n: Optional[int] = None) -> int:
    """Number of transformations of degree n having type t."""
    n = t.n if n is None else n
    if t.n != n or not t.is_valid():
        raise ValueError(f"{t} is not a type vector of degree {n}")
    num = math.factorial(n)
    rest = n
    for k in range(1, n + 1):
        num *= math.comb(rest, t[k])
        rest -= t[k]
    den = math.prod(math.factorial(i) ** t[i] for i in range(1, n + 1))
    q, r = divmod(num, den)
    assert r == 0
    return q


def integer_partitions(n: int, largest: Optional[int] = None) -> Iterator[tuple[int, ...]]:
    """Partitions of n as non-increasing tuples, in reverse lexicographic order."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in integer_partitions(n - first, first):
            yield (first,) + rest


def partition_to_type(parts: tuple[int, ...], n: int) -> TypeVector:
    c = Counter(parts)
    return TypeVector(tuple(c.get(k, 0) for k in range(1, n + 1)))


def enumerate_types(n: int) -> list[TypeVector]:
    return [partition_to_type(p, n) for p in integer_partitions(n)]


@lru_cache(maxsize=None)
def partition_count(n: int) -> int:
    """p(n) by Euler's pentagonal number recurrence."""
    if n < 0:
        return 0
    if n == 0:
        return 1
    total = 0
    j = 1
    while True:
        g1 = j * (3 * j - 1) // 2
        if g1 > n:
            break
        sign = 1 if j % 2 else -1
        total += sign * partition_count(n - g1)
        g2 = j * (3 * j + 1) // 2
        if g2 <= n:
            total += sign * partition_count(n - g2)
        j += 1
    return total


def representative_of_type(t: TypeVector) -> FiniteTransformation:
    """A canonical transformation of type t: consecutive blocks, largest first, mapped to 1, 2, ..."""
    imgs = []
    for tag, size in enumerate(t.as_partition(), start=1):
        imgs.extend([tag] * size)
    return FiniteTransformation(tuple(imgs))
