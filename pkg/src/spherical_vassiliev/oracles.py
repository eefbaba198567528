"""Slow independent checks: braid equality through the Artin action,
abelianizations through sympy's Smith form, and a dense per-call
re-implementation of quotient reduction."""

from __future__ import annotations

from dataclasses import dataclass

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import smith_normal_decomp

from . import freegroup as fg
from .braidcore import (
    BraidWord,
    PureWord,
    artin_automorphism,
    fundamental_words,
    relators,
)
from .ncalg.lattice import smith_form
from .ncalg.poly import NCPoly, generators, monomial_index
from .ncalg.presentations import RelatorSet
from .ncalg.tables import CanonicalElement

MAX_ORACLE_DEGREE = 3


def braid_equal_oracle(u: BraidWord, v: BraidWord, n: int | None = None) -> bool:
    n = n or max(u.n, v.n)
    u, v = u.embed(n), v.embed(n)
    a, b = artin_automorphism(u), artin_automorphism(v)
    return all(fg.reduce(x) == fg.reduce(y) for x, y in zip(a.images, b.images))


# ------------------------------------------------------------ abelianization

@dataclass(frozen=True)
class AbelianizationReport:
    presentation: str
    n: int
    rank: int
    torsion: tuple          # invariant factors > 1, each dividing the next
    word_class: tuple       # torsion coordinates first, then free ones
    delta_squared_class: tuple


def _exponents(w, n: int) -> list:
    if isinstance(w, PureWord):
        gs = generators(n)
        vec = [0] * len(gs)
        for (i, j), e in w.letters:
            vec[gs.index((i, j))] += e
        return vec
    return fg.exponent_sums(w.letters, n - 1)


def h1_oracle(presentation_id: str, n: int, word=None) -> AbelianizationReport:
    """First homology of a presentation, with the class of ``word`` and of the
    full twist.

    The torsion coordinate of ``Z/2``-type is normalized to vanish on as many
    generators as possible, scanning from the last one; this pins down a
    single character when the free part allows it.
    """
    rels = relators(n, presentation_id)
    pure = isinstance(rels[0], PureWord)
    M = Matrix([_exponents(r, n) for r in rels])
    ngen = M.shape[1]
    D, _, T = smith_normal_decomp(M, domain=ZZ)
    diag = [abs(int(D[i, i])) for i in range(min(D.shape))]
    diag += [0] * (ngen - len(diag))
    tors = [i for i, t in enumerate(diag) if t > 1]
    free = [i for i, t in enumerate(diag) if t == 0]
    # functionals: column k of T gives the coordinate k of a generator
    func = {k: [int(T[g, k]) for g in range(ngen)] for k in tors + free}
    for k in tors:
        t = diag[k]
        hs = [[a % t for a in func[fk]] for fk in free]
        f = [a % t for a in func[k]]
        # fully reduced echelon of the free functionals mod t, pivots from the last generator
        for g in reversed(range(ngen)):
            piv = next((h for h in hs if _invertible(h[g], t)), None)
            if piv is None:
                continue
            hs.remove(piv)
            inv = pow(piv[g], -1, t)
            piv = [(a * inv) % t for a in piv]
            hs = [[(a - h[g] * b) % t for a, b in zip(h, piv)] for h in hs]
            f = [(a - f[g] * b) % t for a, b in zip(f, piv)]
        func[k] = f

    def cls(vec) -> tuple:
        out = []
        for k in tors:
            out.append(sum(a * b for a, b in zip(func[k], vec)) % diag[k])
        for k in free:
            out.append(sum(a * b for a, b in zip(func[k], vec)))
        return tuple(out)

    delta = fundamental_words(n, "delta_sq_pure" if pure else "delta_sq_sigma")
    vec = _exponents(word, n) if word is not None else [0] * ngen
    return AbelianizationReport(presentation_id, n, len(free), tuple(diag[k] for k in tors),
                                cls(vec), cls(_exponents(delta, n)))


def _invertible(a: int, t: int) -> bool:
    from math import gcd
    return gcd(a, t) == 1


# ---------------------------------------------------- dense naive reduction

class OracleDegreeError(ValueError):
    pass


def _dense_span(rel: RelatorSet, d: int) -> list:
    G = rel.G
    size = G ** d
    rows = []
    for r in rel.relators:
        e = len(next(iter(r)))
        for a in range(d - e + 1):
            b = d - e - a
            for iu in range(G ** a):
                for iv in range(G ** b):
                    row = [0] * size
                    for mono, c in r.items():
                        row[(iu * G ** e + monomial_index(mono, G)) * G ** b + iv] += c
                    rows.append(row)
    return rows


def _reduced_hermite(rows: list, ncols: int) -> dict:
    """Column-by-column Euclid from the right; returns {pivot column: row}."""
    pending = [r for r in rows if any(r)]
    pivots: dict = {}
    for c in reversed(range(ncols)):
        live = [r for r in pending if r[c]]
        rest = [r for r in pending if not r[c]]
        while len(live) > 1:
            live.sort(key=lambda r: abs(r[c]))
            p = live[0]
            nxt = [p]
            for r in live[1:]:
                q = r[c] // p[c]
                r = [x - q * y for x, y in zip(r, p)]
                (nxt if r[c] else rest).append(r)
            live = nxt
        if live:
            p = live[0]
            if p[c] < 0:
                p = [-x for x in p]
            pivots[c] = p
        pending = [r for r in rest if any(r)]
    for c in sorted(pivots):
        row = pivots[c]
        for c2 in sorted((k for k in pivots if k < c), reverse=True):
            q = row[c2] // pivots[c2][c2]
            if q:
                row = [x - q * y for x, y in zip(row, pivots[c2])]
        pivots[c] = row
    return pivots


def _degree_coordinates(vec: list, pivots: dict, ncols: int):
    keep = [c for c in range(ncols) if c not in pivots or pivots[c][c] != 1]
    v = list(vec)
    for c in sorted(pivots, reverse=True):
        if pivots[c][c] == 1 and v[c]:
            q = v[c]
            v = [x - q * y for x, y in zip(v, pivots[c])]
    proj = [v[c] for c in keep]
    torsion_rows = [[pivots[c][k] for k in keep] for c in sorted(pivots) if pivots[c][c] != 1]
    if not torsion_rows:
        return tuple(proj), tuple(0 for _ in keep)
    diag, T, _ = smith_form(torsion_rows, len(keep))
    kept = [i for i in range(len(keep)) if i >= len(diag) or diag[i] != 1]
    moduli = tuple(diag[i] if i < len(diag) else 0 for i in kept)
    coords = []
    for t, i in zip(moduli, kept):
        y = sum(proj[r] * T[r][i] for r in range(len(keep)))
        coords.append(y % t if t else y)
    return tuple(coords), moduli


def naive_reduce_oracle(u: NCPoly, rel: RelatorSet) -> CanonicalElement:
    if u.m > MAX_ORACLE_DEGREE:
        raise OracleDegreeError(f"oracle limited to degree <= {MAX_ORACLE_DEGREE}")
    if u.N != rel.N:
        raise ValueError("polynomial and presentation disagree on N")
    G = rel.G
    coords, moduli = [], []
    for d in range(u.m + 1):
        size = G ** d
        vec = [0] * size
        for mono, c in u.coeffs.items():
            if len(mono) == d:
                vec[monomial_index(mono, G)] += c
        pivots = _reduced_hermite(_dense_span(rel, d), size)
        cs, ms = _degree_coordinates(vec, pivots, size)
        coords.append(cs)
        moduli.append(ms)
    return CanonicalElement(rel.id, rel.N, u.m, tuple(coords), tuple(moduli))
