"""Braid words, permutations, the Artin representation and relator tables.

Conventions used throughout the package:

* a braid word is read left to right; ``permutation_of(u * v)`` sends a
  strand first through ``u`` and then through ``v``;
* ``Permutation.images[k-1]`` is the final position of the strand that
  starts at position ``k``; ``p * q`` means "first p, then q";
* ``artin_automorphism(u * v)`` applies the automorphism of ``u`` first.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Sequence

from . import freegroup as fg


class WordError(ValueError):
    """Raised for malformed or out-of-range braid words."""


@dataclass(frozen=True)
class BraidWord:
    n: int
    letters: tuple = ()  # signed generator indices: +i is s_i, -i is s_i^-1

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        for a in self.letters:
            if a == 0 or abs(a) > self.n - 1:
                raise WordError(f"generator index {abs(a)} out of range [1, {self.n - 1}]")

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.n != self.n:
            raise WordError(f"strand counts differ: {self.n} vs {other.n}")
        return BraidWord(self.n, self.letters + other.letters)

    def __pow__(self, k: int) -> "BraidWord":
        base = self if k >= 0 else self.inverse()
        return BraidWord(self.n, base.letters * abs(k))

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "BraidWord":
        return BraidWord(self.n, fg.inverse(self.letters))

    def reduce(self) -> "BraidWord":
        return BraidWord(self.n, fg.reduce(self.letters))

    def embed(self, n: int) -> "BraidWord":
        """The same letters viewed on ``n >= self.n`` strands."""
        return BraidWord(n, self.letters)

    def __str__(self) -> str:
        return format_word(self)


@dataclass(frozen=True)
class PureWord:
    n: int
    letters: tuple = ()  # ((i, j), e) with i < j, e = +1 or -1

    def __post_init__(self):
        letters = tuple(((int(i), int(j)), int(e)) for (i, j), e in self.letters)
        object.__setattr__(self, "letters", letters)
        for (i, j), e in letters:
            if not 1 <= i < j <= self.n:
                raise WordError(f"pure generator a{i},{j} out of range for n={self.n}")
            if e not in (1, -1):
                raise WordError(f"exponent must be +1 or -1, got {e}")

    def __mul__(self, other: "PureWord") -> "PureWord":
        if other.n != self.n:
            raise WordError(f"strand counts differ: {self.n} vs {other.n}")
        return PureWord(self.n, self.letters + other.letters)

    def __pow__(self, k: int) -> "PureWord":
        base = self if k >= 0 else self.inverse()
        return PureWord(self.n, base.letters * abs(k))

    def __len__(self) -> int:
        return len(self.letters)

    def inverse(self) -> "PureWord":
        return PureWord(self.n, tuple((ij, -e) for ij, e in reversed(self.letters)))

    def reduce(self) -> "PureWord":
        out: list = []
        for ij, e in self.letters:
            if out and out[-1] == (ij, -e):
                out.pop()
            else:
                out.append((ij, e))
        return PureWord(self.n, tuple(out))

    def with_n(self, n: int) -> "PureWord":
        return PureWord(n, self.letters)

    def exponent_vector(self) -> dict:
        vec: dict = {}
        for ij, e in self.letters:
            vec[ij] = vec.get(ij, 0) + e
        return {ij: c for ij, c in vec.items() if c}

    def __str__(self) -> str:
        return format_word(self)


@dataclass(frozen=True)
class Permutation:
    n: int
    images: tuple

    def __post_init__(self):
        images = tuple(int(x) for x in self.images)
        object.__setattr__(self, "images", images)
        if sorted(images) != list(range(1, self.n + 1)):
            raise ValueError(f"not a permutation of 1..{self.n}: {images}")

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(n, tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, n: int, i: int, j: int) -> "Permutation":
        images = list(range(1, n + 1))
        images[i - 1], images[j - 1] = j, i
        return cls(n, tuple(images))

    def __call__(self, k: int) -> int:
        return self.images[k - 1]

    def __mul__(self, other: "Permutation") -> "Permutation":
        # first self, then other
        return Permutation(self.n, tuple(other(self(k)) for k in range(1, self.n + 1)))

    def inverse(self) -> "Permutation":
        inv = [0] * self.n
        for k, pk in enumerate(self.images, start=1):
            inv[pk - 1] = k
        return Permutation(self.n, tuple(inv))

    def is_identity(self) -> bool:
        return self.images == tuple(range(1, self.n + 1))

    def __str__(self) -> str:
        return "[" + " ".join(map(str, self.images)) + "]"


@dataclass(frozen=True)
class FreeAutomorphism:
    n: int
    images: tuple  # images[k-1] is the reduced image word of x_k
    inverse_images: tuple = field(default=None, compare=False, repr=False)

    def __call__(self, w: Sequence[int]) -> tuple:
        return fg.substitute(w, self.images)

    def is_identity(self) -> bool:
        return all(im == (k,) for k, im in enumerate(self.images, start=1))

    def conjugator(self, k: int) -> tuple:
        """The reduced ``W`` with ``image(x_k) = W x_k W^-1``, normalized so
        that ``W`` does not end in ``x_k^{+-1}``."""
        return _conjugator_of(self.images[k - 1], k)

    def check_inverse(self) -> bool:
        if self.inverse_images is None:
            return True
        ident = [(k,) for k in range(1, self.n + 1)]
        forward = [fg.substitute(im, self.images) for im in self.inverse_images]
        return forward == ident


def _conjugator_of(image: Sequence[int], k: int) -> tuple:
    # image = W x_k W^-1 with W reduced; find the middle letter
    L = len(image)
    if L % 2 == 0:
        raise ValueError(f"image of x_{k} is not a conjugate of x_{k}")
    mid = L // 2
    W = image[:mid]
    if image[mid] != k or tuple(image[mid + 1:]) != fg.inverse(W):
        raise ValueError(f"image of x_{k} is not a conjugate of x_{k}")
    W = list(W)
    while W and abs(W[-1]) == k:
        W.pop()
    return tuple(W)


@dataclass(frozen=True)
class GroupRingElement:
    n: int
    terms: tuple  # sorted ((letters, coeff), ...) with letters free-reduced

    @classmethod
    def from_terms(cls, n: int, pairs: Iterable) -> "GroupRingElement":
        acc: dict = {}
        for word, c in pairs:
            letters = word.letters if isinstance(word, BraidWord) else tuple(word)
            key = fg.reduce(letters)
            acc[key] = acc.get(key, 0) + c
        terms = tuple(sorted(((w, c) for w, c in acc.items() if c),
                             key=lambda t: (len(t[0]), t[0])))
        return cls(n, terms)

    def __iter__(self) -> Iterator:
        for letters, c in self.terms:
            yield BraidWord(self.n, letters), c

    def __add__(self, other: "GroupRingElement") -> "GroupRingElement":
        return GroupRingElement.from_terms(self.n, list(self.terms) + list(other.terms))

    def __sub__(self, other: "GroupRingElement") -> "GroupRingElement":
        return self + other.scale(-1)

    def scale(self, c: int) -> "GroupRingElement":
        return GroupRingElement.from_terms(self.n, [(w, c * k) for w, k in self.terms])

    def __mul__(self, other: "GroupRingElement") -> "GroupRingElement":
        return GroupRingElement.from_terms(
            self.n, [(fg.mul(u, v), a * b) for u, a in self.terms for v, b in other.terms])


# ---------------------------------------------------------------- parsing

_SIGMA_TOKEN = re.compile(r"^s(\d+)(\^(-?1))?$")
_PURE_TOKEN = re.compile(r"^a(\d+),(\d+)(\^(-?1))?$")
_SINGULAR_TOKEN = re.compile(r"^x(\d+)$")


def parse_word(text: str, n: int, alphabet: str = "sigma"):
    """Parse whitespace-separated tokens ``s<i>[^-1]`` or ``a<i>,<j>[^-1]``."""
    tokens = text.split()
    if alphabet == "sigma":
        letters = []
        for tok in tokens:
            m = _SIGMA_TOKEN.match(tok)
            if not m:
                raise WordError(f"malformed token {tok!r}")
            i = int(m.group(1))
            letters.append(-i if m.group(3) == "-1" else i)
        return BraidWord(n, letters)
    if alphabet == "pure":
        letters = []
        for tok in tokens:
            m = _PURE_TOKEN.match(tok)
            if not m:
                raise WordError(f"malformed token {tok!r}")
            i, j = int(m.group(1)), int(m.group(2))
            if i > j:
                i, j = j, i
            if i == j:
                raise WordError(f"a{i},{j} is not a generator")
            letters.append(((i, j), -1 if m.group(4) == "-1" else 1))
        return PureWord(n, letters)
    raise WordError(f"unknown alphabet {alphabet!r}")


def parse_singular_word(text: str, n: int) -> GroupRingElement:
    """Parse a sigma word that may contain singular crossings ``x<i>``;
    each expands to ``s_i - s_i^-1``."""
    terms = [((), 1)]
    for tok in text.split():
        m = _SINGULAR_TOKEN.match(tok)
        if m:
            i = int(m.group(1))
            if not 1 <= i <= n - 1:
                raise WordError(f"generator index {i} out of range [1, {n - 1}]")
            choices = [((i,), 1), ((-i,), -1)]
        else:
            letters = parse_word(tok, n, "sigma").letters
            choices = [(letters, 1)]
        terms = [(w + l, c * d) for w, c in terms for l, d in choices]
    return GroupRingElement.from_terms(n, terms)


def format_word(w) -> str:
    if isinstance(w, BraidWord):
        return " ".join(f"s{a}" if a > 0 else f"s{-a}^-1" for a in w.letters)
    return " ".join(f"a{i},{j}" if e > 0 else f"a{i},{j}^-1" for (i, j), e in w.letters)


def word_algebra(u: BraidWord, v: BraidWord | None = None, op: str = "concat") -> BraidWord:
    if op == "concat":
        return u * v
    if op == "inverse":
        return u.inverse()
    if op == "reduce":
        return u.reduce()
    raise ValueError(f"unknown operation {op!r}")


# ---------------------------------------------------------- permutations

def permutation_of(w: BraidWord) -> Permutation:
    at = list(range(1, w.n + 1))  # at[pos-1] = strand currently at pos
    for a in w.letters:
        i = abs(a)
        at[i - 1], at[i] = at[i], at[i - 1]
    images = [0] * w.n
    for pos, strand in enumerate(at, start=1):
        images[strand - 1] = pos
    return Permutation(w.n, tuple(images))


def section_word(p: Permutation) -> BraidWord:
    """Positive word S(p) from a left-to-right bubble sort; its permutation is p."""
    at = list(range(1, p.n + 1))
    letters = []
    swapped = True
    while swapped:
        swapped = False
        for i in range(1, p.n):
            if p(at[i - 1]) > p(at[i]):
                at[i - 1], at[i] = at[i], at[i - 1]
                letters.append(i)
                swapped = True
    return BraidWord(p.n, letters)


def pure_part(b: BraidWord) -> tuple[BraidWord, Permutation]:
    p = permutation_of(b)
    q = (b * section_word(p).inverse()).reduce()
    return q, p


# ------------------------------------------------------ Artin representation

def _generator_rule(n: int, a: int) -> list:
    images = [(k,) for k in range(1, n + 1)]
    i = abs(a)
    if a > 0:
        images[i - 1] = (i, i + 1, -i)
        images[i] = (i,)
    else:
        images[i - 1] = (i + 1,)
        images[i] = (-(i + 1), i, i + 1)
    return images


_RULES: dict = {}


def _rule(n: int, a: int):
    key = (n, a)
    if key not in _RULES:
        ims = _generator_rule(n, a)
        _RULES[key] = (ims, [fg.inverse(im) for im in ims])
    return _RULES[key]


def artin_automorphism(w: BraidWord, with_inverse: bool = False) -> FreeAutomorphism:
    images = [(k,) for k in range(1, w.n + 1)]
    for a in w.letters:
        ims, inv = _rule(w.n, a)
        images = [fg.substitute(im, ims, inv) for im in images]
    inverse_images = None
    if with_inverse:
        inverse_images = tuple(artin_automorphism(w.inverse()).images)
    return FreeAutomorphism(w.n, tuple(images), inverse_images)


# ---------------------------------------------------------- strand deletion

def delete_strand(w: BraidWord, k: int) -> BraidWord:
    if not permutation_of(w)(k) == k:
        raise WordError(f"strand {k} is not fixed by the braid")
    pos = k
    letters = []
    for a in w.letters:
        i = abs(a)
        if i == pos:
            pos = i + 1
        elif i + 1 == pos:
            pos = i
        else:
            j = i - 1 if i > pos else i
            letters.append(j if a > 0 else -j)
    return BraidWord(w.n - 1, letters)


# ------------------------------------------------------- pure generators

def expand_pure_generator(i: int, j: int, n: int) -> BraidWord:
    """a_{i,j} = s_{j-1} ... s_{i+1} s_i^2 s_{i+1}^-1 ... s_{j-1}^-1."""
    if not 1 <= i < j <= n:
        raise WordError(f"a{i},{j} out of range for n={n}")
    conj = list(range(j - 1, i, -1))
    return BraidWord(n, conj + [i, i] + [-c for c in reversed(conj)])


def expand_pure_word(w: PureWord) -> BraidWord:
    letters: list = []
    for (i, j), e in w.letters:
        g = expand_pure_generator(i, j, w.n)
        letters.extend(g.letters if e > 0 else g.inverse().letters)
    return BraidWord(w.n, letters)


def fundamental_words(n: int, which: str = "delta"):
    if n < 2:
        raise WordError("fundamental words need n >= 2")
    if which == "delta":
        letters = []
        for t in range(n - 1, 0, -1):
            letters.extend(range(1, t + 1))
        return BraidWord(n, letters)
    if which == "delta_sq_sigma":
        return fundamental_words(n, "delta") ** 2
    if which == "delta_sq_pure":
        return PureWord(n, [((i, j), 1) for j in range(2, n + 1) for i in range(1, j)])
    raise ValueError(f"unknown fundamental word {which!r}")


def full_twist(n: int) -> BraidWord:
    """(s_1 s_2 ... s_{n-1})^n."""
    return BraidWord(n, list(range(1, n)) * n)


# --------------------------------------------------------------- relators

def _commutator_sigma(n, i, j):
    return BraidWord(n, (i, j, -i, -j))


def _pure(n, *letters) -> PureWord:
    return PureWord(n, [((min(i, j), max(i, j)), e) for i, j, e in letters])


def _pure_relation(n, lhs, rhs) -> PureWord:
    return _pure(n, *lhs) * _pure(n, *rhs).inverse()


def _artin_relators(n):
    out = []
    for i in range(1, n):
        for j in range(i + 2, n):
            out.append(_commutator_sigma(n, i, j))
    for i in range(1, n - 1):
        out.append(BraidWord(n, (i, i + 1, i, -(i + 1), -i, -(i + 1))))
    return out


def sphere_relator(n: int) -> BraidWord:
    """s_1 ... s_{n-2} s_{n-1}^2 s_{n-2} ... s_1."""
    return BraidWord(n, list(range(1, n)) + list(range(n - 1, 0, -1)))


def _burau_relators(n):
    out = []
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(i + 1, n + 1):
                for l in range(k + 1, n + 1):
                    # i<j<k<l or i<k<l<j
                    if j < k or l < j:
                        out.append(_pure_relation(n, [(i, j, 1), (k, l, 1)], [(k, l, 1), (i, j, 1)]))
    for i, j, k in _triples(n):
        out.append(_pure_relation(n, [(i, j, 1), (i, k, 1), (j, k, 1)],
                                  [(i, k, 1), (j, k, 1), (i, j, 1)]))
    for i, j, k in _triples(n):
        out.append(_pure_relation(n, [(i, k, 1), (j, k, 1), (i, j, 1)],
                                  [(j, k, 1), (i, j, 1), (i, k, 1)]))
    for i, j, k in _triples(n):
        for l in range(k + 1, n + 1):
            out.append(_pure_relation(
                n, [(i, k, 1), (j, k, 1), (j, l, 1), (j, k, -1)],
                [(j, k, 1), (j, l, 1), (j, k, -1), (i, k, 1)]))
    return out


def _triples(n):
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                yield i, j, k


def gvb_row(n: int, i: int) -> PureWord:
    """a_{i,i+1} a_{i,i+2} ... a_{i,i+n-1} with indices taken mod n."""
    letters = []
    for t in range(1, n):
        j = (i + t - 1) % n + 1
        letters.append((i, j, 1))
    return _pure(n, *letters)


PRESENTATIONS = ("artin", "sphere_braid", "mcg_sphere", "burau_pure", "gvb_sphere_pure")


def relators(n: int, presentation_id: str) -> list:
    if n < 2:
        raise WordError("relators need n >= 2")
    if presentation_id == "artin":
        return _artin_relators(n)
    if presentation_id == "sphere_braid":
        return _artin_relators(n) + [sphere_relator(n)]
    if presentation_id == "mcg_sphere":
        return relators(n, "sphere_braid") + [full_twist(n)]
    if presentation_id == "burau_pure":
        return _burau_relators(n)
    if presentation_id == "gvb_sphere_pure":
        return _burau_relators(n) + [gvb_row(n, i) for i in range(1, n + 1)]
    raise WordError(f"unsupported presentation {presentation_id!r}")
