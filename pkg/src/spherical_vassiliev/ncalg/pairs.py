"""Pairs ``P + Q x`` over the reduced pure mapping class algebra, with
``x^2 = -2x``.

Filtration weight of ``2^j x`` times a degree-d element is ``d + j + 1``, so
after truncation at m a degree-d Q-coordinate is only meaningful modulo
``2^(m-d)`` and disappears for ``d >= m``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..braidcore import Permutation
from .poly import substitute_series, substitution_matrix
from .tables import Algebra, CanonicalElement, TableStore


def dyadic_valuation(c: int) -> int:
    if c == 0:
        raise ValueError("valuation of zero")
    return (c & -c).bit_length() - 1


def dyadic_moduli(base_moduli, m: int) -> tuple:
    out = []
    for d, ms in enumerate(base_moduli):
        cap = 2 ** (m - d) if d < m else 1
        out.append(tuple(math.gcd(t, cap) for t in ms))
    return tuple(out)


@dataclass(frozen=True)
class SpherePair:
    P: CanonicalElement
    Q: CanonicalElement

    @property
    def m(self) -> int:
        return self.P.m

    @property
    def N(self) -> int:
        return self.P.N

    def __add__(self, other: "SpherePair") -> "SpherePair":
        return SpherePair(self.P + other.P, self.Q + other.Q)

    def __sub__(self, other: "SpherePair") -> "SpherePair":
        return SpherePair(self.P - other.P, self.Q - other.Q)

    def __neg__(self) -> "SpherePair":
        return SpherePair(-self.P, -self.Q)

    def scale(self, c: int) -> "SpherePair":
        return SpherePair(self.P.scale(c), self.Q.scale(c))

    def is_zero(self) -> bool:
        return self.P.is_zero() and self.Q.is_zero()

    def reduce_mod(self, k: int) -> "SpherePair":
        return SpherePair(self.P.reduce_mod(k), self.Q.reduce_mod(k))

    def additive_order(self):
        a, b = self.P.additive_order(), self.Q.additive_order()
        if a is None or b is None:
            return None
        return math.lcm(a, b)


def filtration_degree(u) -> float:
    """Least filtration weight of a nonzero coordinate; ``inf`` for zero."""
    if isinstance(u, CanonicalElement):
        return u.filtration()
    best = u.P.filtration()
    for d, cs in enumerate(u.Q.coords):
        for c in cs:
            if c:
                best = min(best, d + 1 + dyadic_valuation(c))
    return best


class PairAlgebra:
    """Pairs over ``pm_reduced(N)`` truncated at m (N = n - 1 for n strands)."""

    def __init__(self, N: int, m: int, store: TableStore | None = None):
        self.N, self.m = N, m
        self.alg = Algebra("pm_reduced", N, m, store)
        base = tuple(self.alg.table(d).moduli for d in range(m + 1))
        self.q_moduli = dyadic_moduli(base, m)

    def pair(self, P: CanonicalElement, Q: CanonicalElement | None = None) -> SpherePair:
        if Q is None:
            Q = self.alg.zero()
        return SpherePair(P, Q.with_moduli(self.q_moduli))

    def one(self) -> SpherePair:
        return self.pair(self.alg.one())

    def x(self) -> SpherePair:
        return self.pair(self.alg.zero(), self.alg.one())

    def unit_plus_x(self) -> SpherePair:
        return self.pair(self.alg.one(), self.alg.one())

    def _check(self, *us: SpherePair) -> None:
        for u in us:
            if (u.N, u.m) != (self.N, self.m):
                raise ValueError(f"pair over N={u.N}, m={u.m}; expected N={self.N}, m={self.m}")

    def mul(self, u: SpherePair, v: SpherePair) -> SpherePair:
        self._check(u, v)
        lift = self.alg.lift
        P1, Q1, P2, Q2 = lift(u.P), lift(u.Q), lift(v.P), lift(v.Q)
        P = self.alg.reduce_series(P1 * P2)
        QQ = Q1 * Q2
        Q = self.alg.reduce_series(P1 * Q2 + Q1 * P2 - QQ - QQ)
        return self.pair(P, Q)

    def perm_matrix(self, p: Permutation):
        n = self.N + 1
        if p.n != n:
            raise ValueError(f"permutation on {p.n} strands, pairs need {n}")
        rules = {}
        for i in range(1, n):
            for j in range(i + 1, n):
                a, b = sorted((p(i), p(j)))
                if b < n:
                    rules[(i, j)] = {(a, b): 1}
                else:
                    rules[(i, j)] = {(min(a, t), max(a, t)): -1 for t in range(1, n) if t != a}
        return substitution_matrix(rules, self.N, self.N)

    def perm_act(self, p: Permutation, u):
        """Relabel strands by p; index n is rewritten through its row relation."""
        M = self.perm_matrix(p)

        def act(e: CanonicalElement) -> CanonicalElement:
            return self.alg.reduce_series(substitute_series(self.alg.lift(e), M, self.N))

        if isinstance(u, CanonicalElement):
            return act(u)
        return self.pair(act(u.P), act(u.Q))


def pair_mul(u: SpherePair, v: SpherePair, store: TableStore | None = None) -> SpherePair:
    return PairAlgebra(u.N, u.m, store).mul(u, v)


def perm_act(p: Permutation, u, store: TableStore | None = None):
    return PairAlgebra(u.N, u.m, store).perm_act(p, u)
