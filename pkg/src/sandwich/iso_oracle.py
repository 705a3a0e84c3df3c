"""Brute-force isomorphism decision for finite Cayley tables.

Works on index tables only, so it knows nothing about where the tables
came from.  Search order: refine element colours jointly on both tables,
then backtrack over the rarest colour class first, closing each partial
assignment under products.  Every mapping is verified before it is
returned.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .deformed_core import CayleyTable, idempotents_of_table

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    def __init__(self, budget: int):
        super().__init__(f"isomorphism search exceeded {budget} nodes")
        self.budget = budget


@dataclass(frozen=True)
class Fingerprint:
    size: int
    idempotents: int
    profile: tuple[tuple[int, int, bool], ...]
    row_class_sizes: tuple[int, ...]


def _row_class_sizes(P: np.ndarray) -> np.ndarray:
    """For each element, the number of elements with an identical row."""
    _, inv, counts = np.unique(P, axis=0, return_inverse=True, return_counts=True)
    return counts[inv.reshape(-1)]


def element_invariants(t: CayleyTable) -> list[tuple]:
    P = t.product
    ne = len(t)
    if ne == 0:
        return []
    idem = np.diagonal(P) == np.arange(ne)
    rows = _row_class_sizes(P)
    cols = _row_class_sizes(P.T)
    out = []
    for x in range(ne):
        out.append(
            (
                len(np.unique(P[x])),
                len(np.unique(P[:, x])),
                bool(idem[x]),
                int(rows[x]),
                int(cols[x]),
                bool(idem[P[x, x]]),
            )
        )
    return out


def fingerprint(t: CayleyTable) -> Fingerprint:
    P = t.product
    ne = len(t)
    idem = idempotents_of_table(t)
    profile = tuple(
        sorted((len(np.unique(P[x])), len(np.unique(P[:, x])), x in idem) for x in range(ne))
    )
    if ne:
        _, counts = np.unique(P, axis=0, return_counts=True)
        rcs = tuple(sorted(int(c) for c in counts))
    else:
        rcs = ()
    return Fingerprint(ne, len(idem), profile, rcs)


def _relabel_jointly(sigs: list[list]) -> list[np.ndarray]:
    """Replace signatures by small ints, using one naming shared by all tables."""
    names = {sig: i for i, sig in enumerate(sorted({s for lst in sigs for s in lst}))}
    return [np.array([names[s] for s in lst], dtype=np.int64) for lst in sigs]


def refine_colours(tables: list[CayleyTable], max_rounds: int = 8) -> list[np.ndarray]:
    """Isomorphism-invariant element colours, computed on all tables at once.

    A colour is refined by the sorted multiset of
    (colour(y), colour(xy), colour(yx)) over all y.
    """
    colours = _relabel_jointly([element_invariants(t) for t in tables])
    n_colours = len(set(np.concatenate(colours).tolist())) if colours else 0
    for _ in range(max_rounds):
        K = int(max(int(c.max()) for c in colours if len(c)) + 1) if any(len(c) for c in colours) else 1
        sigs = []
        for t, c in zip(tables, colours):
            P = t.product
            codes = (c[None, :] * K + c[P]) * K + c[P.T]
            codes.sort(axis=1)
            sigs.append([(int(c[x]), codes[x].tobytes()) for x in range(len(t))])
        new = _relabel_jointly(sigs)
        k = len(set(np.concatenate(new).tolist()))
        colours = new
        if k == n_colours:
            break
        n_colours = k
    return colours


def verify_isomorphism(s: CayleyTable, t: CayleyTable, h) -> bool:
    """h(xy) == h(x)h(y) for all pairs, and h is a bijection."""
    h = np.asarray(h)
    if len(s) != len(t) or h.shape != (len(s),):
        return False
    if sorted(h.tolist()) != list(range(len(t))):
        return False
    return bool(np.array_equal(h[s.product], t.product[np.ix_(h, h)]))


def find_isomorphism(
    s: CayleyTable, t: CayleyTable, budget: int = DEFAULT_BUDGET
) -> Optional[list[int]]:
    """Return h with h[i] = image of s-element i, or None when no isomorphism exists.

    Raises ``BudgetExceeded`` rather than guessing when the search runs long.
    """
    ne = len(s)
    if ne != len(t):
        return None
    if ne == 0:
        return []
    if fingerprint(s) != fingerprint(t):
        return None
    cs, ct = refine_colours([s, t])
    if Counter(cs.tolist()) != Counter(ct.tolist()):
        return None

    S = s.product.tolist()
    T = t.product.tolist()
    cs_l, ct_l = cs.tolist(), ct.tolist()
    by_colour: dict[int, list[int]] = {}
    for y, c in enumerate(ct_l):
        by_colour.setdefault(c, []).append(y)
    class_size = Counter(cs_l)

    h = [-1] * ne
    hinv = [-1] * ne
    assigned: list[int] = []
    nodes = 0

    def assign(x: int, y: int) -> Optional[list[int]]:
        """Assign x -> y and close under products; return the trail, or None on conflict."""
        trail = []

        def put(p, q):
            h[p] = q
            hinv[q] = p
            assigned.append(p)
            trail.append(p)

        def ok(p, q):
            return hinv[q] == -1 and cs_l[p] == ct_l[q]

        if not ok(x, y):
            return None
        put(x, y)
        i = len(assigned) - 1
        while i < len(assigned):
            p = assigned[i]
            hp = h[p]
            Sp, Tp = S[p], T[hp]
            for j in range(i + 1):
                q = assigned[j]
                hq = h[q]
                for r, target in ((Sp[q], Tp[hq]), (S[q][p], T[hq][hp])):
                    hr = h[r]
                    if hr == -1:
                        if not ok(r, target):
                            undo(trail)
                            return None
                        put(r, target)
                    elif hr != target:
                        undo(trail)
                        return None
            i += 1
        return trail

    def undo(trail):
        for p in trail:
            hinv[h[p]] = -1
            h[p] = -1
        del assigned[len(assigned) - len(trail) :]

    def search() -> bool:
        nonlocal nodes
        if len(assigned) == ne:
            return True
        x = min((p for p in range(ne) if h[p] == -1), key=lambda p: (class_size[cs_l[p]], p))
        for y in by_colour.get(cs_l[x], ()):
            if hinv[y] != -1:
                continue
            nodes += 1
            if nodes > budget:
                raise BudgetExceeded(budget)
            trail = assign(x, y)
            if trail is None:
                continue
            if search():
                return True
            undo(trail)
        return False

    if not search():
        return None
    if not verify_isomorphism(s, t, h):
        raise AssertionError("isomorphism search produced an invalid mapping")
    return list(h)


def is_isomorphic(s: CayleyTable, t: CayleyTable, budget: int = DEFAULT_BUDGET) -> bool:
    return find_isomorphism(s, t, budget) is not None


def find_anti_isomorphism(s: CayleyTable, t: CayleyTable, budget: int = DEFAULT_BUDGET):
    """An anti-isomorphism s -> t is an isomorphism s -> opposite(t)."""
    return find_isomorphism(s, t.transpose(), budget)


def mapping_pairs(h) -> list[tuple[int, int]]:
    return [(i, int(v)) for i, v in enumerate(h)]
