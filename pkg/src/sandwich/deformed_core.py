"""The sandwich product ``x *_a y = x a y`` and finite Cayley tables."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence, Union

import numpy as np

from .finite_maps import DEFAULT_CAP, compose, enumerate_elements, same_degree


class AssociativityError(RuntimeError):
    pass


def sandwich_product(x, a, y):
    from .bicyclic import BicyclicElement, bmul

    if isinstance(x, BicyclicElement):
        return bmul(bmul(x, a), y)
    same_degree(x, a, y)
    return compose(compose(x, a), y)


@dataclass(frozen=True, eq=False)
class CayleyTable:
    """A finite magma stored as labels plus a matrix of product indices."""

    elements: tuple[str, ...]
    product: np.ndarray

    def __post_init__(self):
        labels = tuple(self.elements)
        object.__setattr__(self, "elements", labels)
        prod = np.array(self.product, dtype=np.int32, copy=True)
        ne = len(labels)
        if prod.shape != (ne, ne):
            raise ValueError(f"product matrix has shape {prod.shape}, expected {(ne, ne)}")
        if ne and (prod.min() < 0 or prod.max() >= ne):
            raise ValueError("product entry out of range")
        if len(set(labels)) != ne:
            raise ValueError("element labels must be distinct")
        prod.setflags(write=False)
        object.__setattr__(self, "product", prod)

    def __len__(self):
        return len(self.elements)

    def __eq__(self, other):
        if not isinstance(other, CayleyTable):
            return NotImplemented
        return self.elements == other.elements and np.array_equal(self.product, other.product)

    def __hash__(self):
        return hash((self.elements, self.product.tobytes()))

    def index(self, label: str) -> int:
        return self.elements.index(label)

    def mul(self, i: int, j: int) -> int:
        return int(self.product[i, j])

    def relabel(self, perm: Sequence[int]) -> "CayleyTable":
        """Table of the same magma with element i renamed to perm[i]."""
        perm = np.asarray(perm, dtype=np.int32)
        ne = len(self)
        inv = np.empty(ne, dtype=np.int32)
        inv[perm] = np.arange(ne, dtype=np.int32)
        new_prod = perm[self.product[np.ix_(inv, inv)]]
        labels = [None] * ne
        for i, lab in enumerate(self.elements):
            labels[perm[i]] = lab
        return CayleyTable(tuple(labels), new_prod)

    def transpose(self) -> "CayleyTable":
        """The opposite magma (x.y := y x); anti-isomorphisms become isomorphisms."""
        return CayleyTable(self.elements, self.product.T)

    def dumps(self) -> str:
        lines = [str(len(self)), " ".join(self.elements)]
        lines += [" ".join(map(str, row)) for row in self.product.tolist()]
        return "\n".join(lines) + "\n"

    @classmethod
    def loads(cls, text: str) -> "CayleyTable":
        lines = [ln for ln in text.splitlines() if ln.strip()]
        if not lines:
            raise ValueError("empty table file")
        ne = int(lines[0])
        labels = tuple(lines[1].split()) if ne else ()
        rows = [list(map(int, ln.split())) for ln in lines[2 : 2 + ne]]
        if len(labels) != ne or len(rows) != ne:
            raise ValueError("table file is truncated")
        return cls(labels, np.array(rows, dtype=np.int32).reshape(ne, ne))

    def save(self, path: Union[str, Path]) -> None:
        Path(path).write_text(self.dumps())

    @classmethod
    def load(cls, path: Union[str, Path]) -> "CayleyTable":
        return cls.loads(Path(path).read_text())


def check_associativity(t: CayleyTable, chunk: int = 64) -> bool:
    P = t.product
    ne = len(t)
    for start in range(0, ne, chunk):
        rows = slice(start, min(start + chunk, ne))
        # left[i,j,k] = (ij)k, right[i,j,k] = i(jk)
        left = P[P[rows]]
        right = P[rows][:, P]
        if not np.array_equal(left, right):
            return False
    return True


def build_deformed_table(family: str, n: int, a, cap: int = DEFAULT_CAP, check: bool = True) -> CayleyTable:
    """Cayley table of (family_n, *_a) over the canonical element order."""
    elements = enumerate_elements(family, n, cap)
    if a.n != n:
        raise ValueError(f"sandwich element has degree {a.n}, expected {n}")
    index = {e.images: i for i, e in enumerate(elements)}
    if a.images not in index:
        raise ValueError(f"{a} is not an element of {family}_{n}")
    ai = a.images
    images = [e.images for e in elements]
    ne = len(elements)
    prod = np.empty((ne, ne), dtype=np.int32)
    for i, x in enumerate(images):
        xa = tuple(None if v is None else ai[v - 1] for v in x)
        for j, y in enumerate(images):
            prod[i, j] = index[tuple(None if v is None else y[v - 1] for v in xa)]
    t = CayleyTable(tuple(str(e) for e in elements), prod)
    if check and not check_associativity(t):
        raise AssociativityError(f"({family}_{n}, *_{a}) table is not associative")
    return t


def idempotents_of_table(t: CayleyTable) -> set[int]:
    diag = np.diagonal(t.product)
    return {int(i) for i in np.nonzero(diag == np.arange(len(t)))[0]}


def deformed_idempotents(elements: Iterable, a) -> list:
    """Brute-force idempotents of (S, *_a) by scanning the diagonal only."""
    return [e for e in elements if sandwich_product(e, a, e) == e]
