"""Truncated noncommutative polynomials over Z.

Generators are the pairs ``(i, j)``, ``i < j <= N``, in lexicographic order;
a monomial is a tuple of 0-based generator indices.  Besides the sparse
:class:`NCPoly` there is a dense per-degree form (:class:`Series`) where the
degree-d block is indexed by the base-G value of the monomial, so products
are sums of Kronecker products.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Mapping

import numpy as np


class ParameterMismatch(ValueError):
    pass


@lru_cache(maxsize=None)
def generators(N: int) -> tuple:
    return tuple((i, j) for i in range(1, N + 1) for j in range(i + 1, N + 1))


@lru_cache(maxsize=None)
def generator_index(N: int) -> dict:
    return {g: t for t, g in enumerate(generators(N))}


def gen(N: int, i: int, j: int) -> int:
    if i > j:
        i, j = j, i
    try:
        return generator_index(N)[(i, j)]
    except KeyError:
        raise ValueError(f"no generator ({i},{j}) with N={N}") from None


def monomial_index(mono, G: int) -> int:
    idx = 0
    for a in mono:
        idx = idx * G + a
    return idx


def monomial_of(idx: int, d: int, G: int) -> tuple:
    out = []
    for _ in range(d):
        idx, r = divmod(idx, G)
        out.append(r)
    return tuple(reversed(out))


def all_monomials(d: int, G: int):
    return product(range(G), repeat=d)


def format_monomial(mono, N: int) -> str:
    if not mono:
        return "1"
    gs = generators(N)
    return "*".join("x%d%d" % gs[a] if N < 10 else "x%d,%d" % gs[a] for a in mono)


@dataclass(frozen=True)
class NCPoly:
    N: int
    m: int
    coeffs: Mapping = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for mono, c in dict(self.coeffs).items():
            mono = tuple(mono)
            if c and len(mono) <= self.m:
                clean[mono] = clean.get(mono, 0) + int(c)
        object.__setattr__(self, "coeffs", {k: v for k, v in clean.items() if v})

    @classmethod
    def one(cls, N: int, m: int) -> "NCPoly":
        return cls(N, m, {(): 1})

    @classmethod
    def generator(cls, N: int, m: int, i: int, j: int, c: int = 1) -> "NCPoly":
        return cls(N, m, {(gen(N, i, j),): c})

    def _check(self, other: "NCPoly") -> None:
        if (self.N, self.m) != (other.N, other.m):
            raise ParameterMismatch(f"(N, m) = {(self.N, self.m)} vs {(other.N, other.m)}")

    def __add__(self, other: "NCPoly") -> "NCPoly":
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return NCPoly(self.N, self.m, out)

    def __neg__(self) -> "NCPoly":
        return self.scale(-1)

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def scale(self, c: int) -> "NCPoly":
        return NCPoly(self.N, self.m, {k: c * v for k, v in self.coeffs.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        return nc_mul(self, other)

    __rmul__ = scale

    def degree_part(self, d: int) -> "NCPoly":
        return NCPoly(self.N, self.m, {k: v for k, v in self.coeffs.items() if len(k) == d})

    def is_homogeneous(self) -> bool:
        return len({len(k) for k in self.coeffs}) <= 1

    def max_degree(self) -> int:
        return max((len(k) for k in self.coeffs), default=-1)

    def to_series(self) -> "Series":
        return Series.from_poly(self)

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for mono in sorted(self.coeffs, key=lambda k: (len(k), k)):
            c = self.coeffs[mono]
            body = format_monomial(mono, self.N)
            if body == "1":
                parts.append(str(c))
            elif c == 1:
                parts.append(body)
            elif c == -1:
                parts.append("-" + body)
            else:
                parts.append(f"{c}*{body}")
        return " + ".join(parts).replace("+ -", "- ")


def nc_mul(u: NCPoly, v: NCPoly) -> NCPoly:
    u._check(v)
    out: dict = {}
    for a, x in u.coeffs.items():
        for b, y in v.coeffs.items():
            if len(a) + len(b) <= u.m:
                k = a + b
                out[k] = out.get(k, 0) + x * y
    return NCPoly(u.N, u.m, out)


class Series:
    """Dense truncated series: ``blocks[d]`` is an int64 vector of length G**d."""

    __slots__ = ("N", "m", "G", "blocks")

    def __init__(self, N: int, m: int, blocks):
        self.N, self.m = N, m
        self.G = len(generators(N))
        self.blocks = blocks

    @classmethod
    def zero(cls, N: int, m: int) -> "Series":
        G = len(generators(N))
        return cls(N, m, [np.zeros(G ** d, dtype=np.int64) for d in range(m + 1)])

    @classmethod
    def one(cls, N: int, m: int) -> "Series":
        s = cls.zero(N, m)
        s.blocks[0][0] = 1
        return s

    @classmethod
    def from_poly(cls, u: NCPoly) -> "Series":
        s = cls.zero(u.N, u.m)
        for mono, c in u.coeffs.items():
            s.blocks[len(mono)][monomial_index(mono, s.G)] += c
        return s

    def to_poly(self) -> NCPoly:
        out = {}
        for d, b in enumerate(self.blocks):
            for idx in np.flatnonzero(b):
                out[monomial_of(int(idx), d, self.G)] = int(b[idx])
        return NCPoly(self.N, self.m, out)

    def copy(self) -> "Series":
        return Series(self.N, self.m, [b.copy() for b in self.blocks])

    def __mul__(self, other: "Series") -> "Series":
        out = []
        for d in range(self.m + 1):
            acc = np.zeros(self.G ** d, dtype=np.int64)
            for a in range(d + 1):
                p, q = self.blocks[a], other.blocks[d - a]
                if p.any() and q.any():
                    acc += np.kron(p, q)
            out.append(acc)
        return Series(self.N, self.m, out)

    def __add__(self, other: "Series") -> "Series":
        return Series(self.N, self.m, [a + b for a, b in zip(self.blocks, other.blocks)])

    def __sub__(self, other: "Series") -> "Series":
        return Series(self.N, self.m, [a - b for a, b in zip(self.blocks, other.blocks)])

    def __eq__(self, other) -> bool:
        return isinstance(other, Series) and all(
            np.array_equal(a, b) for a, b in zip(self.blocks, other.blocks))


@lru_cache(maxsize=None)
def _letter_series(N: int, m: int, g: int, e: int) -> Series:
    s = Series.one(N, m)
    G = s.G
    for d in range(1, m + 1):
        if e > 0 and d > 1:
            break
        idx = monomial_index((g,) * d, G)
        s.blocks[d][idx] = 1 if e > 0 else (-1) ** d
    return s


def letter_series(N: int, m: int, g: int, e: int) -> Series:
    """1 + A for e = +1, the truncated geometric series of -A for e = -1."""
    return _letter_series(N, m, g, e)


def magnus_expand(word, N: int, m: int) -> NCPoly:
    """Magnus expansion of a word given as ``((i, j), e)`` letters or a PureWord."""
    letters = getattr(word, "letters", word)
    s = Series.one(N, m)
    for (i, j), e in letters:
        s = s * letter_series(N, m, gen(N, i, j), e)
    return s.to_poly()


def default_rules(n: int) -> dict:
    """A_{i,n} -> -sum_{j != i, j < n} x_{min,max}; other generators unchanged."""
    rules = {}
    for i, j in generators(n):
        if j == n:
            rules[(i, j)] = {(min(i, t), max(i, t)): -1 for t in range(1, n) if t != i}
        else:
            rules[(i, j)] = {(i, j): 1}
    return rules


def substitute_generators(u: NCPoly, rules: Mapping | None = None, target_N: int | None = None) -> NCPoly:
    """Homomorphic substitution of degree-1 images for the generators of ``u``.

    ``rules`` maps ``(i, j)`` to ``{(k, l): coefficient}`` over the target
    generators; missing generators are left unchanged.
    """
    rules = default_rules(u.N) if rules is None else rules
    N2 = target_N if target_N is not None else u.N - 1
    src = generators(u.N)
    images = []
    for g in src:
        rule = rules.get(g, {g: 1})
        image = {}
        for key, c in rule.items():
            if not (isinstance(key, tuple) and len(key) == 2 and all(isinstance(t, int) for t in key)):
                raise ValueError(f"rule image for {g} must be a degree-1 polynomial")
            k, l = key
            if c:
                image[gen(N2, k, l)] = image.get(gen(N2, k, l), 0) + c
        images.append(image)
    out: dict = {}
    for mono, c in u.coeffs.items():
        terms = {(): c}
        for a in mono:
            nxt: dict = {}
            for w, x in terms.items():
                for b, y in images[a].items():
                    nxt[w + (b,)] = nxt.get(w + (b,), 0) + x * y
            terms = nxt
        for w, x in terms.items():
            out[w] = out.get(w, 0) + x
    return NCPoly(N2, u.m, out)


def substitution_matrix(rules: Mapping, N_src: int, N_dst: int) -> np.ndarray:
    """G_src x G_dst matrix of a degree-1 substitution given as
    ``{(i, j): {(k, l): coefficient}}``."""
    src, dst = generators(N_src), generator_index(N_dst)
    M = np.zeros((len(src), len(dst)), dtype=np.int64)
    for a, g in enumerate(src):
        for (k, l), c in rules.get(g, {g: 1}).items():
            M[a, dst[(min(k, l), max(k, l))]] += c
    return M


def substitute_series(s: Series, M: np.ndarray, N_dst: int) -> Series:
    """Apply the algebra map generated by the rows of ``M`` to every block."""
    G_dst = M.shape[1]
    out = []
    for d, b in enumerate(s.blocks):
        if d == 0:
            out.append(b.copy())
            continue
        t = b.reshape((s.G,) * d)
        for axis in range(d):
            t = np.moveaxis(np.tensordot(t, M, axes=([axis], [0])), -1, axis)
        out.append(np.ascontiguousarray(t).reshape(G_dst ** d))
    return Series(N_dst, s.m, out)
