"""Homogeneous relator sets for the graded algebras.

A relator is a dict ``{monomial: coefficient}`` with all monomials of one
degree, over the generators of :func:`poly.generators`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .poly import gen, generators

PRESENTATION_IDS = ("kohno_4T", "ihara", "pm_reduced", "sphere_reduced")


@dataclass(frozen=True)
class RelatorSet:
    id: str
    N: int
    relators: tuple

    @property
    def G(self) -> int:
        return len(generators(self.N))

    @property
    def key(self) -> str:
        return f"{self.id}({self.N})"


def _commutator(a: int, b_terms) -> dict:
    out: dict = {}
    for b, c in b_terms:
        for mono, s in (((a, b), c), ((b, a), -c)):
            out[mono] = out.get(mono, 0) + s
    return {k: v for k, v in out.items() if v}


def _four_term(N: int) -> list:
    rels = []
    pairs = generators(N)
    for p, q in combinations(pairs, 2):
        if not set(p) & set(q):
            rels.append(_commutator(gen(N, *p), [(gen(N, *q), 1)]))
    for i, j, k in combinations(range(1, N + 1), 3):
        rels.append(_commutator(gen(N, i, j), [(gen(N, i, k), 1), (gen(N, j, k), 1)]))
        rels.append(_commutator(gen(N, i, k), [(gen(N, i, j), 1), (gen(N, j, k), 1)]))
    return rels


def _z(N: int, c: int = 1) -> dict:
    return {(gen(N, i, j),): c for i, j in generators(N)}


def _rows(N: int) -> list:
    return [{(gen(N, i, j),): 1 for j in range(1, N + 1) if j != i} for i in range(1, N + 1)]


def relator_set(presentation_id: str, N: int) -> RelatorSet:
    if N < 2:
        raise ValueError("presentations need N >= 2")
    if presentation_id == "kohno_4T":
        rels = _four_term(N)
    elif presentation_id == "ihara":
        rels = _four_term(N) + _rows(N)
    elif presentation_id == "pm_reduced":
        rels = _four_term(N) + [_z(N)]
    elif presentation_id == "sphere_reduced":
        rels = _four_term(N) + [_z(N, 2)]
    else:
        raise ValueError(f"unknown presentation {presentation_id!r}; choose from {PRESENTATION_IDS}")
    return RelatorSet(presentation_id, N, tuple(rels))


def kohno_4T(N: int) -> RelatorSet:
    return relator_set("kohno_4T", N)


def ihara(N: int) -> RelatorSet:
    return relator_set("ihara", N)


def pm_reduced(N: int) -> RelatorSet:
    return relator_set("pm_reduced", N)


def sphere_reduced(N: int) -> RelatorSet:
    return relator_set("sphere_reduced", N)
