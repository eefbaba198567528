"""Artin combing of classical pure braids and the sphere-side characters.

A combed pure braid on ``n`` strands is a product ``beta_n beta_{n-1} ...
beta_2`` where ``beta_k`` is a free word in ``a_{1,k}, ..., a_{k-1,k}``.
Kernel words are handled as free-group words whose generator ``i`` stands
for ``a_{i,k}``.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from functools import lru_cache

from . import freegroup as fg
from .braidcore import (
    BraidWord,
    Permutation,
    PureWord,
    WordError,
    artin_automorphism,
    delete_strand,
    expand_pure_word,
    fundamental_words,
    permutation_of,
    section_word,
)

log = logging.getLogger(__name__)


class CombingError(RuntimeError):
    """A kernel word could not be decoded or failed verification."""


@dataclass(frozen=True)
class CombedForm:
    n: int
    factors: tuple  # (beta_n, ..., beta_2); beta_k is a free word, generator i = a_{i,k}

    def factor(self, k: int) -> tuple:
        return self.factors[self.n - k]

    def to_pure_word(self) -> PureWord:
        letters = []
        for k in range(self.n, 1, -1):
            for a in self.factor(k):
                letters.append(((abs(a), k), 1 if a > 0 else -1))
        return PureWord(self.n, letters)

    def expand(self) -> BraidWord:
        return expand_pure_word(self.to_pure_word())


def kernel_word_to_pure(g, k: int, n: int | None = None) -> PureWord:
    return PureWord(n or k, [((abs(a), k), 1 if a > 0 else -1) for a in g])


def braid_equal(u: BraidWord, v: BraidWord) -> bool:
    if u.n != v.n:
        return False
    return artin_automorphism(u).images == artin_automorphism(v).images


# ----------------------------------------------------------- decoding

def decode_conjugator(W, k: int) -> tuple:
    """Kernel word from the conjugator of x_k.

    Modulo the normal closure of x_k every kernel element acts trivially, so
    W(w g) = W(w) C_g there, with C_{a_{i,k}} = x_i. Deleting x_k from W is
    therefore the isomorphism a_{i,k} -> x_i of the kernel onto F_{k-1}.
    """
    return fg.reduce(a for a in W if abs(a) != k)


def decode_kernel(w: BraidWord, k: int | None = None, verify: bool = True) -> tuple:
    """Write a pure braid in the kernel of forgetting strand ``k`` as a free
    word in ``a_{1,k}, ..., a_{k-1,k}`` (generator ``i`` is ``a_{i,k}``)."""
    k = k or w.n
    if w.n != k:
        raise WordError("decode_kernel expects the braid on exactly k strands")
    aut = artin_automorphism(w)
    try:
        W = aut.conjugator(k)
    except ValueError as exc:
        raise CombingError(str(exc)) from exc
    g = decode_conjugator(W, k)
    if verify:
        back = artin_automorphism(expand_pure_word(kernel_word_to_pure(g, k)))
        if back.images != aut.images:
            raise CombingError("decoded kernel word does not re-encode to the input")
    return g


def comb(q: BraidWord, n: int | None = None, verify: bool = True) -> CombedForm:
    n = n or q.n
    if not permutation_of(q).is_identity():
        raise WordError("comb expects a pure braid")
    factors = []
    cur = q.reduce()
    for k in range(n, 2, -1):
        shorter = delete_strand(cur, k)
        kernel = (cur * shorter.embed(k).inverse()).reduce()
        factors.append(decode_kernel(kernel, k, verify=False))
        cur = shorter.reduce()
    e = sum(1 if a > 0 else -1 for a in cur.letters)
    factors.append(tuple([1] * (e // 2) if e >= 0 else [-1] * (-e // 2)))
    out = CombedForm(n, tuple(factors))
    if verify and not braid_equal(out.expand(), q):
        raise CombingError("combed form does not re-expand to the input braid")
    return out


# --------------------------------------- sigma words to pure-generator words

@lru_cache(maxsize=None)
def _schreier_generator(n: int, before: tuple, a: int) -> tuple:
    """Letters of S(before) s_a S(after)^-1 as a pure word (combed)."""
    p = Permutation(n, before)
    after = p * permutation_of(BraidWord(n, (a,)))
    w = (section_word(p) * BraidWord(n, (a,)) * section_word(after).inverse()).reduce()
    return comb(w).to_pure_word().reduce().letters


def pure_word_of(q: BraidWord) -> PureWord:
    """A word in the a_{i,j} representing the pure braid ``q`` (Reidemeister-
    Schreier rewriting through the bubble-sort section)."""
    n = q.n
    p = Permutation.identity(n)
    letters: list = []
    for a in q.letters:
        letters.extend(_schreier_generator(n, p.images, a))
        p = p * permutation_of(BraidWord(n, (a,)))
    if not p.is_identity():
        raise WordError("pure_word_of expects a pure braid")
    return PureWord(n, letters).reduce()


@lru_cache(maxsize=None)
def conjugation_rule(n: int, r: int, s: int, e: int, i: int) -> tuple:
    """Kernel word for a_{r,s}^e a_{i,n} a_{r,s}^-e (with s < n)."""
    g = PureWord(n, [((r, s), e)])
    w = g * PureWord(n, [((i, n), 1)]) * g.inverse()
    return decode_kernel(expand_pure_word(w).reduce(), n)


# ------------------------------------------------- sphere-side operations

def eliminate_last_index(w: PureWord, n: int | None = None) -> PureWord:
    """Replace each a_{i,n} using the row relation of index i."""
    n = n or w.n
    out: list = []
    for (i, j), e in w.letters:
        if j != n:
            out.append(((i, j), e))
            continue
        tail = [((i, t), 1) for t in range(i + 1, n)]
        head = [((t, i), 1) for t in range(1, i)]
        repl = PureWord(n, tail).inverse().letters + PureWord(n, head).inverse().letters
        if e < 0:
            repl = PureWord(n, repl).inverse().letters
        out.extend(repl)
    return PureWord(n - 1, out)


TRIANGLE = ((1, 2), (1, 3), (2, 3))


def epsilon_character(w: PureWord, n: int | None = None) -> int:
    n = n or w.n
    if n < 3:
        raise ValueError("the order-two character needs n >= 3")
    return sum(e for ij, e in w.letters if ij in TRIANGLE) % 2


def center_exponent(w: PureWord) -> int:
    return sum(e for ij, e in w.letters if ij == (1, 2))


def delta_squared_pure(n: int) -> PureWord:
    return fundamental_words(n, "delta_sq_pure")
