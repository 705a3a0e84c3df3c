"""The bicyclic monoid <a, b | ab = 1> under deformed multiplication.

Elements are kept in canonical form ``b^m a^k``.  Exponents are bounded
by a signed 64-bit limit; exceeding it raises ``OverflowError``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterator

EXPONENT_LIMIT = 2**63 - 1


def _checked(v: int) -> int:
    if v < 0:
        raise ValueError(f"negative exponent {v}")
    if v > EXPONENT_LIMIT:
        raise OverflowError(f"exponent {v} exceeds {EXPONENT_LIMIT}")
    return v


@dataclass(frozen=True, order=True)
class BicyclicElement:
    m: int  # power of b
    k: int  # power of a

    def __post_init__(self):
        _checked(self.m)
        _checked(self.k)

    def __mul__(self, other: "BicyclicElement") -> "BicyclicElement":
        return bmul(self, other)

    def __str__(self):
        parts = []
        if self.m:
            parts.append(f"b^{self.m}")
        if self.k:
            parts.append(f"a^{self.k}")
        return " ".join(parts) or "1"


ONE = BicyclicElement(0, 0)

_TOKEN = re.compile(r"([ab])(?:\^(\d+))?")


def parse_bicyclic(text: str) -> BicyclicElement:
    """Parse ``b^m a^k``; either factor may be omitted, ``1`` is the identity."""
    s = text.strip()
    if s == "1":
        return ONE
    m = re.fullmatch(r"\s*(b(?:\^\d+)?)?\s*(a(?:\^\d+)?)?\s*", s)
    if not s or not m or not (m.group(1) or m.group(2)):
        raise ValueError(f"bad bicyclic literal {text!r}")
    exps = {"a": 0, "b": 0}
    for g in (m.group(1), m.group(2)):
        if g:
            letter, power = _TOKEN.fullmatch(g).groups()
            exps[letter] = int(power) if power is not None else 1
    return BicyclicElement(exps["b"], exps["a"])


def bmul(x: BicyclicElement, y: BicyclicElement) -> BicyclicElement:
    """b^m a^k . b^t a^s, cancelling ab = 1."""
    if x.k >= y.m:
        return BicyclicElement(x.m, _checked(x.k - y.m + y.k))
    return BicyclicElement(_checked(x.m + y.m - x.k), y.k)


def binv(x: BicyclicElement) -> BicyclicElement:
    return BicyclicElement(x.k, x.m)


def deformed_mul(x: BicyclicElement, alpha: BicyclicElement, y: BicyclicElement) -> BicyclicElement:
    return bmul(bmul(x, alpha), y)


def epsilon(alpha: BicyclicElement, i: int) -> BicyclicElement:
    """The i-th idempotent b^(k+i) a^(m+i) of (B, *_alpha), alpha = b^m a^k."""
    if i < 0:
        raise ValueError("chain index must be nonnegative")
    return BicyclicElement(_checked(alpha.k + i), _checked(alpha.m + i))


def idempotent_chain(alpha: BicyclicElement, length: int) -> list[BicyclicElement]:
    return [epsilon(alpha, i) for i in range(length)]


def is_deformed_idempotent(xi: BicyclicElement, alpha: BicyclicElement) -> bool:
    return deformed_mul(xi, alpha, xi) == xi


def is_chain_member(xi: BicyclicElement, alpha: BicyclicElement) -> bool:
    """Closed form: xi = b^t a^s lies on the chain iff t - k == s - m >= 0."""
    return xi.m - alpha.k == xi.k - alpha.m >= 0


def idempotent_leq(i: int, j: int) -> bool:
    """eps_i <= eps_j in the natural order of the idempotent chain."""
    return i >= j


def idempotent_leq_direct(alpha: BicyclicElement, i: int, j: int) -> bool:
    ei, ej = epsilon(alpha, i), epsilon(alpha, j)
    return deformed_mul(ei, alpha, ej) == ei and deformed_mul(ej, alpha, ei) == ei


def in_P(xi: BicyclicElement, alpha: BicyclicElement, i: int) -> bool:
    """eps_i *_alpha xi != xi, evaluated directly."""
    return deformed_mul(epsilon(alpha, i), alpha, xi) != xi


def in_Q(xi: BicyclicElement, alpha: BicyclicElement, i: int) -> bool:
    """xi *_alpha eps_i != xi, evaluated directly."""
    return deformed_mul(xi, alpha, epsilon(alpha, i)) != xi


def in_P_closed(xi: BicyclicElement, alpha: BicyclicElement, i: int) -> bool:
    return xi.m < alpha.k + i


def in_Q_closed(xi: BicyclicElement, alpha: BicyclicElement, i: int) -> bool:
    return xi.k < alpha.m + i


def pq_cardinality(alpha: BicyclicElement, i: int, j: int | None = None) -> int:
    """|P_i cap Q_j| = (k+i)(m+j); j defaults to i."""
    j = i if j is None else j
    return _checked((alpha.k + i) * (alpha.m + j))


def pq_window(alpha: BicyclicElement, i: int, j: int | None = None, margin: int = 2) -> Iterator[BicyclicElement]:
    """Members of P_i cap Q_j found by direct evaluation over a box that contains the window.

    The box extends ``margin`` past the window edges in both exponents so a
    wrong closed form would surface as extra members.
    """
    j = i if j is None else j
    for t in range(alpha.k + i + margin):
        for s in range(alpha.m + j + margin):
            xi = BicyclicElement(t, s)
            if in_P(xi, alpha, i) and in_Q(xi, alpha, j):
                yield xi


def cardinality_triple(alpha: BicyclicElement, direct: bool = False) -> tuple[int, int, int]:
    """(|P_1 cap Q_1|, |P_1 cap Q_0|, |P_0 cap Q_1|)."""
    if direct:
        return tuple(sum(1 for _ in pq_window(alpha, i, j)) for i, j in ((1, 1), (1, 0), (0, 1)))
    return (pq_cardinality(alpha, 1, 1), pq_cardinality(alpha, 1, 0), pq_cardinality(alpha, 0, 1))


class InconsistentCardinalities(ValueError):
    pass


def recover_sandwich(c11: int, c10: int, c01: int) -> BicyclicElement:
    k = c11 - c10 - 1
    m = c11 - c01 - 1
    if k < 0 or m < 0:
        raise InconsistentCardinalities(f"negative exponent from ({c11}, {c10}, {c01})")
    alpha = BicyclicElement(m, k)
    if cardinality_triple(alpha) != (c11, c10, c01):
        raise InconsistentCardinalities(f"({c11}, {c10}, {c01}) is not realized by {alpha}")
    return alpha


def anti_iso_phi(xi: BicyclicElement) -> BicyclicElement:
    """b^x a^y -> b^y a^x; an anti-isomorphism (B, *_alpha) -> (B, *_alpha^-1)."""
    return BicyclicElement(xi.k, xi.m)
