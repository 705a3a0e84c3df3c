"""Deformed symmetric inverse semigroups (IS_n, *_alpha).

Two sandwich elements give isomorphic semigroups exactly when they have
the same rank; the isomorphism is ``xi -> pi^-1 xi tau^-1`` for any pair
of permutations with ``beta = tau alpha pi``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .finite_maps import (
    DegreeMismatch,
    PartialInjection,
    Permutation,
    compose,
    inverse,
    rank,
)


class RankMismatch(ValueError):
    pass


@dataclass(frozen=True)
class IsnWitness:
    """Permutations with ``beta == compose(compose(tau, alpha), pi)``."""

    alpha: PartialInjection
    beta: PartialInjection
    tau: Permutation
    pi: Permutation

    def is_valid(self) -> bool:
        return compose(compose(self.tau, self.alpha), self.pi) == self.beta

    def to_record(self) -> dict:
        return {k: str(getattr(self, k)) for k in ("alpha", "beta", "tau", "pi")}


def idempotent_count_formula(alpha: PartialInjection) -> int:
    return 2 ** rank(alpha)


def enumerate_idempotents_isn(alpha: PartialInjection) -> list[PartialInjection]:
    """One idempotent per subset A of ran(alpha): the restriction of alpha^-1 to A."""
    inv = inverse(alpha)
    ran = sorted(alpha.ran())
    out = []
    for r in range(len(ran) + 1):
        for subset in itertools.combinations(ran, r):
            out.append(PartialInjection.from_dict(alpha.n, {x: inv(x) for x in subset}))
    return out


def isn_isomorphic(alpha: PartialInjection, beta: PartialInjection) -> bool:
    if alpha.n != beta.n:
        raise DegreeMismatch(f"degrees differ: {alpha.n} vs {beta.n}")
    return rank(alpha) == rank(beta)


def extend_to_permutation(n: int, partial: dict[int, int]) -> Permutation:
    """Complete a partial bijection by matching free sources to free targets in ascending order."""
    free_src = [p for p in range(1, n + 1) if p not in partial]
    free_tgt = sorted(set(range(1, n + 1)) - set(partial.values()))
    full = dict(partial)
    full.update(zip(free_src, free_tgt))
    return Permutation(tuple(full[p] for p in range(1, n + 1)))


def isn_witness(alpha: PartialInjection, beta: PartialInjection) -> IsnWitness:
    if not isn_isomorphic(alpha, beta):
        raise RankMismatch(f"rank mismatch: {rank(alpha)} vs {rank(beta)}")
    n = alpha.n
    tau = extend_to_permutation(n, dict(zip(sorted(beta.dom()), sorted(alpha.dom()))))
    pi_part = {alpha(tau(x)): beta(x) for x in beta.dom()}
    pi = extend_to_permutation(n, pi_part)
    w = IsnWitness(alpha, beta, tau, pi)
    assert w.is_valid(), w
    return w


def isn_iso_map(w: IsnWitness, xi: PartialInjection) -> PartialInjection:
    """f(xi) = pi^-1 xi tau^-1, an isomorphism (IS_n, *_alpha) -> (IS_n, *_beta)."""
    out = compose(compose(inverse(w.pi), xi), inverse(w.tau))
    if type(out) is not type(xi):
        out = type(xi)(out.images)
    return out


def isn_class_count(n: int) -> int:
    return n + 1
