"""Element arithmetic for T_n, IS_n and S_n.

Points are 1-based everywhere a caller can see them.  Products are taken
left to right: ``compose(x, y)`` applies ``x`` first, then ``y``.
"""

from __future__ import annotations

import itertools
import re
from collections import Counter
from dataclasses import dataclass
from typing import Iterator, Optional, Sequence, Union

DEFAULT_CAP = 5

FAMILIES = ("T", "IS", "S")


class DegreeMismatch(ValueError):
    pass


class FamilyMismatch(ValueError):
    pass


class CapExceeded(ValueError):
    def __init__(self, n: int, cap: int):
        super().__init__(f"n={n} exceeds the enumeration cap {cap} (raise it with --cap)")
        self.n = n
        self.cap = cap


@dataclass(frozen=True)
class FiniteTransformation:
    """A total self-map of {1..n}; ``images[i-1]`` is the image of point i."""

    images: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(int(v) for v in self.images))
        n = len(self.images)
        if n < 1:
            raise ValueError("degree must be at least 1")
        for v in self.images:
            if not 1 <= v <= n:
                raise ValueError(f"image {v} outside 1..{n}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, p: int) -> int:
        return self.images[p - 1]

    def image(self) -> frozenset[int]:
        return frozenset(self.images)

    def __str__(self):
        return "[" + ",".join(map(str, self.images)) + "]"

    @classmethod
    def identity(cls, n: int) -> "FiniteTransformation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def constant(cls, n: int, value: int = 1) -> "FiniteTransformation":
        return cls((value,) * n)


@dataclass(frozen=True)
class PartialInjection:
    """An injective partial self-map of {1..n}; ``None`` marks an undefined point."""

    images: tuple[Optional[int], ...]

    def __post_init__(self):
        imgs = tuple(None if v is None else int(v) for v in self.images)
        object.__setattr__(self, "images", imgs)
        n = len(imgs)
        if n < 1:
            raise ValueError("degree must be at least 1")
        defined = [v for v in imgs if v is not None]
        for v in defined:
            if not 1 <= v <= n:
                raise ValueError(f"image {v} outside 1..{n}")
        if len(set(defined)) != len(defined):
            raise ValueError(f"not injective: {imgs}")

    @property
    def n(self) -> int:
        return len(self.images)

    def __call__(self, p: int) -> Optional[int]:
        return self.images[p - 1]

    def dom(self) -> frozenset[int]:
        return frozenset(i + 1 for i, v in enumerate(self.images) if v is not None)

    def ran(self) -> frozenset[int]:
        return frozenset(v for v in self.images if v is not None)

    def __str__(self):
        return "[" + ",".join("-" if v is None else str(v) for v in self.images) + "]"

    @classmethod
    def identity(cls, n: int) -> "PartialInjection":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def empty(cls, n: int) -> "PartialInjection":
        return cls((None,) * n)

    @classmethod
    def from_dict(cls, n: int, mapping: dict[int, int]) -> "PartialInjection":
        return cls(tuple(mapping.get(p) for p in range(1, n + 1)))


@dataclass(frozen=True)
class Permutation(PartialInjection):
    """A partial injection defined on every point."""

    def __post_init__(self):
        super().__post_init__()
        if None in self.images:
            raise ValueError(f"permutation must be total: {self}")

    def as_transformation(self) -> FiniteTransformation:
        return FiniteTransformation(self.images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))


MapLike = Union[FiniteTransformation, PartialInjection]


def _result_class(x: MapLike, y: MapLike) -> type:
    xt = isinstance(x, FiniteTransformation)
    yt = isinstance(y, FiniteTransformation)
    if xt or yt:
        # a transformation only mixes with total injections
        for other in (x, y):
            if isinstance(other, PartialInjection) and not isinstance(other, Permutation):
                raise FamilyMismatch("cannot compose a transformation with a proper partial injection")
        return FiniteTransformation
    if isinstance(x, Permutation) and isinstance(y, Permutation):
        return Permutation
    return PartialInjection


def compose(x: MapLike, y: MapLike) -> MapLike:
    """Left-to-right product: ``compose(x, y)(p) == y(x(p))``."""
    if x.n != y.n:
        raise DegreeMismatch(f"degrees differ: {x.n} vs {y.n}")
    cls = _result_class(x, y)
    yi = y.images
    out = tuple(None if v is None else yi[v - 1] for v in x.images)
    return cls(out)


def rank(alpha: MapLike) -> int:
    if isinstance(alpha, FiniteTransformation):
        return len(alpha.image())
    return len(alpha.ran())


def inverse(alpha: PartialInjection) -> PartialInjection:
    mapping = {v: i + 1 for i, v in enumerate(alpha.images) if v is not None}
    cls = Permutation if isinstance(alpha, Permutation) else PartialInjection
    return cls(tuple(mapping.get(p) for p in range(1, alpha.n + 1)))


@dataclass(frozen=True)
class KernelPartition:
    """Blocks of points with equal image, keyed by that image point."""

    n: int
    blocks: tuple[tuple[int, tuple[int, ...]], ...]  # (tag, sorted block), sorted by tag

    def block(self, tag: int) -> tuple[int, ...]:
        for t, b in self.blocks:
            if t == tag:
                return b
        raise KeyError(tag)

    def size(self, tag: int) -> int:
        """Block size for an image point; 0 if ``tag`` is not in the image."""
        for t, b in self.blocks:
            if t == tag:
                return len(b)
        return 0

    def sizes(self) -> dict[int, int]:
        return {t: len(b) for t, b in self.blocks}

    @property
    def min_block_size(self) -> int:
        return min(len(b) for _, b in self.blocks)


def kernel_partition(a: FiniteTransformation) -> KernelPartition:
    groups: dict[int, list[int]] = {}
    for p, v in enumerate(a.images, start=1):
        groups.setdefault(v, []).append(p)
    return KernelPartition(a.n, tuple((t, tuple(groups[t])) for t in sorted(groups)))


@dataclass(frozen=True)
class TypeVector:
    """(alpha_1, ..., alpha_n): alpha_k counts image points with exactly k preimages."""

    entries: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "entries", tuple(int(v) for v in self.entries))
        if any(v < 0 for v in self.entries):
            raise ValueError(f"negative type entry: {self.entries}")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, k: int) -> int:
        """1-based access; out-of-range sizes count zero."""
        if 1 <= k <= len(self.entries):
            return self.entries[k - 1]
        return 0

    def weight(self) -> int:
        return sum(k * v for k, v in enumerate(self.entries, start=1))

    def image_size(self) -> int:
        return sum(self.entries)

    def is_valid(self) -> bool:
        return self.weight() == self.n

    def as_partition(self) -> tuple[int, ...]:
        """The integer partition with part k repeated alpha_k times, largest first."""
        parts = []
        for k in range(self.n, 0, -1):
            parts.extend([k] * self[k])
        return tuple(parts)

    def __str__(self):
        return "(" + ",".join(map(str, self.entries)) + ")"


def type_of(a: FiniteTransformation) -> TypeVector:
    counts = Counter(Counter(a.images).values())
    return TypeVector(tuple(counts.get(k, 0) for k in range(1, a.n + 1)))


def _images_for(family: str, n: int) -> Iterator[tuple]:
    pts = range(1, n + 1)
    if family == "T":
        yield from itertools.product(pts, repeat=n)
    elif family == "S":
        yield from itertools.permutations(pts)
    elif family == "IS":
        # lexicographic with "undefined" after every point
        opts = list(pts) + [None]
        for combo in itertools.product(opts, repeat=n):
            defined = [v for v in combo if v is not None]
            if len(set(defined)) == len(defined):
                yield combo
    else:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")


def enumerate_elements(family: str, n: int, cap: int = DEFAULT_CAP) -> list[MapLike]:
    """All elements of T_n, IS_n or S_n in lexicographic order of image sequences."""
    if n < 1:
        raise ValueError("degree must be at least 1")
    if n > cap:
        raise CapExceeded(n, cap)
    cls = {"T": FiniteTransformation, "IS": PartialInjection, "S": Permutation}.get(family)
    if cls is None:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    return [cls(imgs) for imgs in _images_for(family, n)]


_LITERAL = re.compile(r"^\[\s*([0-9\-\s,]*)\]$")


def parse_element(text: str, family: str) -> MapLike:
    """Parse ``[2,1,3]`` (T, S) or ``[2,-,3]`` (IS)."""
    m = _LITERAL.match(text.strip())
    if not m:
        raise ValueError(f"bad element literal {text!r}")
    tokens = [t.strip() for t in m.group(1).split(",")] if m.group(1).strip() else []
    imgs: list[Optional[int]] = []
    for tok in tokens:
        if tok == "-":
            imgs.append(None)
        elif tok.isdigit():
            imgs.append(int(tok))
        else:
            raise ValueError(f"bad token {tok!r} in {text!r}")
    if family == "IS":
        return PartialInjection(tuple(imgs))
    if None in imgs:
        raise ValueError(f"'-' is only allowed in IS literals: {text!r}")
    if family == "T":
        return FiniteTransformation(tuple(imgs))
    if family == "S":
        return Permutation(tuple(imgs))
    raise ValueError(f"unknown family {family!r}")


def format_element(x) -> str:
    return str(x)


def same_degree(*xs: Sequence) -> int:
    ns = {x.n for x in xs}
    if len(ns) != 1:
        raise DegreeMismatch(f"degrees differ: {sorted(ns)}")
    return ns.pop()
