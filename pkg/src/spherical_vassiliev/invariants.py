"""Universal finite-type invariants of pure braids, sphere braids and mapping
classes of the punctured sphere, computed in truncated graded algebras.

Pipeline:

* ``mu``      classical pure braids  -> Kohno algebra of P_n
* ``kappa``   pure mapping classes   -> pm_reduced(n-1)
* ``lambda_`` pure sphere braids     -> pairs P + Q x over pm_reduced(n-1)
* ``K``/``K_M`` full sphere braids / mapping classes, with the permutation.

``mu`` evaluates the Magnus expansion of the combed normal form.  The default
route never forms the combed word: a pure word ``w`` on N strands splits as
``u p`` with ``u`` in the free kernel of forgetting strand N and ``p`` on
N-1 strands, and the Magnus series of ``u`` is accumulated by tracking the
images of ``a_{i,N}`` under conjugation by prefixes of ``p``.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field

from .braidcore import (
    BraidWord,
    Permutation,
    PureWord,
    WordError,
    fundamental_words,
    full_twist,
    parse_singular_word,
    permutation_of,
    pure_part,
)
from .combing import (
    center_exponent,
    comb,
    conjugation_rule,
    eliminate_last_index,
    epsilon_character,
    pure_word_of,
)
from .ncalg.pairs import PairAlgebra, SpherePair, filtration_degree
from .ncalg.poly import Series, gen, letter_series
from .ncalg.tables import Algebra, CanonicalElement, TableStore, default_store

log = logging.getLogger(__name__)

GROUPS = ("pn", "pmn", "ps2", "bs2", "mn")


@dataclass(frozen=True)
class PipelineConfig:
    n: int
    m: int
    group: str = "bs2"
    cache_dir: str | None = None
    build: bool = True

    def __post_init__(self):
        if self.group not in GROUPS:
            raise ValueError(f"group must be one of {GROUPS}")
        if self.n < 2 or self.m < 0:
            raise ValueError("need n >= 2 and m >= 0")
        if self.group != "pn" and self.n < 3:
            raise ValueError("sphere groups need n >= 3")

    def store(self) -> TableStore:
        if self.cache_dir is None and self.build:
            return default_store()
        return TableStore(self.cache_dir, self.build)


# ------------------------------------------------------------------ mu

def _magnus(letters, N_top: int, m: int) -> Series:
    s = Series.one(N_top, m)
    for (i, j), e in letters:
        s = s * letter_series(N_top, m, gen(N_top, i, j), e)
    return s


def mu_series(w: PureWord, m: int, N_top: int | None = None) -> Series:
    """Magnus series of the combed form of the pure braid spelled by ``w``."""
    N_top = N_top or w.n
    letters = [l for l in w.letters]
    out = Series.one(N_top, m)
    factors = []
    while letters:
        N = max(j for (_, j), _ in letters)
        if N < 2:
            break
        ones = {i: letter_series(N_top, m, gen(N_top, i, N), 1) for i in range(1, N)}
        img = dict(ones)
        inv = {i: letter_series(N_top, m, gen(N_top, i, N), -1) for i in range(1, N)}
        u = Series.one(N_top, m)
        rest = []
        for (i, j), e in letters:
            if j == N:
                u = u * (img[i] if e > 0 else inv[i])
                continue
            rest.append(((i, j), e))
            new_img, new_inv = {}, {}
            for t in range(1, N):
                rule = conjugation_rule(N, i, j, e, t)
                if rule == (t,):
                    new_img[t], new_inv[t] = img[t], inv[t]
                    continue
                a = Series.one(N_top, m)
                for b in rule:
                    a = a * (img[b] if b > 0 else inv[-b])
                ai = Series.one(N_top, m)
                for b in reversed(rule):
                    ai = ai * (inv[b] if b > 0 else img[-b])
                new_img[t], new_inv[t] = a, ai
            img, inv = new_img, new_inv
        factors.append(u)
        letters = rest
    for u in factors:
        out = out * u
    return out


def mu(q: BraidWord, n: int | None = None, m: int = 2, store: TableStore | None = None,
       route: str = "track") -> CanonicalElement:
    """Universal invariant of a classical pure braid, reduced modulo the 4T
    relations.  ``route="comb"`` multiplies Magnus expansions of the explicit
    combed factors instead."""
    n = n or q.n
    if q.n != n:
        q = q.embed(n)
    if not permutation_of(q).is_identity():
        raise WordError("mu expects a pure braid")
    alg = Algebra("kohno_4T", n, m, store)
    if route == "comb":
        s = _magnus(comb(q).to_pure_word().letters, n, m)
    else:
        s = mu_series(pure_word_of(q), m, n)
    return alg.reduce_series(s)


def mu_of_pure_word(w: PureWord, m: int, store: TableStore | None = None) -> CanonicalElement:
    return Algebra("kohno_4T", w.n, m, store).reduce_series(mu_series(w, m))


# ------------------------------------------------------- kappa and lambda

def kappa(u: PureWord, n: int, m: int, store: TableStore | None = None) -> CanonicalElement:
    """Invariant of the pure mapping class spelled by ``u`` (indices < n)."""
    N = n - 1
    alg = Algebra("pm_reduced", N, m, store)
    if N < 2:
        return alg.one()
    k = center_exponent(u)
    lift = u.with_n(N) * fundamental_words(N, "delta_sq_pure") ** (-k)
    return alg.reduce_series(mu_series(lift.reduce(), m, N))


def _pure_letters(q, n: int, route: str) -> PureWord:
    if isinstance(q, PureWord):
        return q.with_n(n)
    if q.n != n:
        q = q.embed(n)
    if not permutation_of(q).is_identity():
        raise WordError("expected a pure braid")
    if route == "comb":
        return comb(q).to_pure_word()
    return pure_word_of(q)


def lambda_(q, n: int | None = None, m: int = 2, store: TableStore | None = None,
            route: str = "track") -> SpherePair:
    """Invariant of a pure sphere braid as a pair ``kappa + eps * kappa * x``."""
    n = n or q.n
    if n < 3:
        raise ValueError("sphere invariants need n >= 3")
    w = _pure_letters(q, n, route)
    eps = epsilon_character(w, n)
    P = kappa(eliminate_last_index(w, n), n, m, store)
    pa = PairAlgebra(n - 1, m, store)
    return pa.pair(P, P if eps else None)


def epsilon(q, n: int | None = None) -> int:
    n = n or q.n
    return epsilon_character(_pure_letters(q, n, "track"), n)


# --------------------------------------------------------------- K, K_M

@dataclass(frozen=True)
class InvariantValue:
    value: object         # SpherePair or CanonicalElement
    permutation: Permutation

    def __sub__(self, other: "InvariantValue") -> "InvariantCombination":
        return InvariantCombination.of([(self, 1), (other, -1)])


@dataclass(frozen=True)
class InvariantCombination:
    """Formal sum of values, one per permutation (same-permutation terms add)."""
    terms: tuple = field(default=())  # ((permutation, value), ...) sorted by permutation

    @classmethod
    def of(cls, pairs) -> "InvariantCombination":
        acc: dict = {}
        for v, c in pairs:
            term = v.value.scale(c)
            key = v.permutation
            acc[key] = acc[key] + term if key in acc else term
        terms = tuple(sorted(((p, t) for p, t in acc.items() if not t.is_zero()),
                             key=lambda pt: pt[0].images))
        return cls(terms)

    def is_zero(self) -> bool:
        return not self.terms

    def filtration(self) -> float:
        return min((filtration_degree(t) for _, t in self.terms), default=math.inf)


def K(b: BraidWord, n: int | None = None, m: int = 2, store: TableStore | None = None,
      route: str = "track") -> InvariantValue:
    n = n or b.n
    if b.n != n:
        b = b.embed(n)
    q, p = pure_part(b)
    return InvariantValue(lambda_(q, n, m, store, route), p)


def K_M(b: BraidWord, n: int | None = None, m: int = 2, store: TableStore | None = None,
        route: str = "track") -> InvariantValue:
    n = n or b.n
    if b.n != n:
        b = b.embed(n)
    q, p = pure_part(b)
    w = _pure_letters(q, n, route)
    return InvariantValue(kappa(eliminate_last_index(w, n), n, m, store), p)


def evaluate(b: BraidWord, config: PipelineConfig, store: TableStore | None = None) -> InvariantValue:
    """Invariant of ``b`` in the group named by ``config.group``."""
    store = store or config.store()
    n, m = config.n, config.m
    if b.n != n:
        b = b.embed(n)
    if config.group == "bs2":
        return K(b, n, m, store)
    if config.group == "mn":
        return K_M(b, n, m, store)
    p = permutation_of(b)
    if not p.is_identity():
        raise WordError(f"group {config.group} expects a pure braid")
    if config.group == "pn":
        return InvariantValue(mu(b, n, m, store), p)
    if config.group == "ps2":
        return InvariantValue(lambda_(b, n, m, store), p)
    w = pure_word_of(b)
    return InvariantValue(kappa(eliminate_last_index(w, n), n, m, store), p)


def invariant_of_combination(c, n: int, m: int, group: str = "bs2",
                             store: TableStore | None = None) -> InvariantCombination:
    """Linear extension to group-ring elements; strings may use ``x<i>`` for
    singular crossings."""
    if isinstance(c, str):
        c = parse_singular_word(c, n)
    if group not in ("bs2", "mn", "pn", "ps2", "pmn"):
        raise ValueError(f"unknown group {group!r}")
    config = PipelineConfig(n, m, group)
    store = store or config.store()
    return InvariantCombination.of([(evaluate(w, config, store), k) for w, k in c])


# ------------------------------------------------------------ comparison

@dataclass(frozen=True)
class CompareReport:
    equal: bool
    permutations_equal: bool
    difference: InvariantCombination
    filtration: float
    torsion: bool
    annihilator: int | None


def compare(b1: BraidWord, b2: BraidWord, n: int, m: int, group: str = "bs2",
            store: TableStore | None = None) -> CompareReport:
    config = PipelineConfig(n, m, group)
    store = store or config.store()
    v1, v2 = evaluate(b1, config, store), evaluate(b2, config, store)
    diff = InvariantCombination.of([(v1, 1), (v2, -1)])
    same_perm = v1.permutation == v2.permutation
    torsion = False
    annihilator = None
    if diff.is_zero():
        annihilator = 1
    elif same_perm:
        (_, d), = diff.terms
        order = d.additive_order()
        P = d.P if isinstance(d, SpherePair) else d
        if order is not None and P.is_zero() and order & (order - 1) == 0:
            torsion, annihilator = True, order
    return CompareReport(diff.is_zero(), same_perm, diff, diff.filtration(), torsion, annihilator)


@dataclass(frozen=True)
class EisermannPair:
    n: int
    first: BraidWord
    second: BraidWord


def eisermann_pair(n: int) -> EisermannPair:
    if n < 3:
        raise ValueError("the pair needs n >= 3")
    tau = full_twist(n)
    assert permutation_of(tau).is_identity()
    return EisermannPair(n, BraidWord(n, ()), tau)


def kappa_direct_n5(f3, f2, m: int, store: TableStore | None = None) -> CanonicalElement:
    """Product of the Magnus expansions of a word in a_{1,2..4} and a word in
    a_{2,3..4}, reduced over pm_reduced(4)."""
    letters = []
    for word, first in ((f3, 1), (f2, 2)):
        for (i, j), e in getattr(word, "letters", word):
            if i != first or not first < j <= 4:
                raise WordError(f"a{i},{j} is outside the alphabet a{first},*")
            letters.append(((i, j), e))
    return Algebra("pm_reduced", 4, m, store).reduce_series(_magnus(letters, 4, m))
