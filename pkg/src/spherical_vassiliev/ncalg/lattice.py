"""Integer lattices: sparse row echelon forms, Smith normal form, and the
linear coordinate map of a quotient ``Z^M / L``.

Vectors are sparse dicts ``{column: int}``.  Echelon rows are keyed by their
leading (largest) column, so quotient representatives are supported on the
small columns.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass


def _axpy(y: dict, a: int, x: dict) -> None:
    """y += a * x, in place, dropping zeros."""
    for k, v in x.items():
        s = y.get(k, 0) + a * v
        if s:
            y[k] = s
        else:
            y.pop(k, None)


def _xgcd(a: int, b: int):
    x0, x1, y0, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    return a, x0, y0


class Echelon:
    """Row echelon basis of a sublattice, built by incremental insertion."""

    def __init__(self):
        self.rows: dict = {}  # leading column -> row, leading entry > 0

    def insert(self, vec: dict) -> None:
        row = {k: v for k, v in vec.items() if v}
        while row:
            c = max(row)
            piv = self.rows.get(c)
            if piv is None:
                if row[c] < 0:
                    row = {k: -v for k, v in row.items()}
                self.rows[c] = row
                return
            a, b = piv[c], row[c]
            if b % a == 0:
                _axpy(row, -(b // a), piv)
                continue
            g, s, t = _xgcd(a, b)
            new_piv: dict = {}
            _axpy(new_piv, s, piv)
            _axpy(new_piv, t, row)
            rest: dict = {}
            _axpy(rest, b // g, piv)
            _axpy(rest, -(a // g), row)
            if new_piv[c] < 0:
                new_piv = {k: -v for k, v in new_piv.items()}
            self.rows[c] = new_piv
            row = rest

    def pivot(self, c: int) -> int:
        row = self.rows.get(c)
        return row[c] if row else 0

    def reduce(self, vec: dict) -> dict:
        """Unique representative with ``0 <= v[c] < d_c`` at every pivot column."""
        v = {k: x for k, x in vec.items() if x}
        heap = [-c for c in v if c in self.rows]
        heapq.heapify(heap)
        seen = set(-h for h in heap)
        while heap:
            c = -heapq.heappop(heap)
            seen.discard(c)
            x = v.get(c, 0)
            if not x:
                continue
            row = self.rows[c]
            q = x // row[c]
            if not q:
                continue
            for k, r in row.items():
                s = v.get(k, 0) - q * r
                if s:
                    v[k] = s
                else:
                    v.pop(k, None)
                if k != c and k in self.rows and k not in seen:
                    seen.add(k)
                    heapq.heappush(heap, -k)
        return v

    def reduced_rows(self) -> dict:
        """Reduced Hermite form: entries at lower pivot columns lie in [0, d)."""
        out = {}
        for c in sorted(self.rows):
            row = self.rows[c]
            tail = {k: v for k, v in row.items() if k != c}
            red = self.reduce(tail)
            red[c] = row[c]
            out[c] = red
        return out


def smith_form(rows: list, ncols: int):
    """Smith normal form of a dense integer matrix (list of row lists).

    Returns ``(diag, T, Tinv)`` with ``rowspace(A) T = rowspace(D)``; ``diag``
    lists the nonzero invariant factors in order.
    """
    A = [list(r) for r in rows]
    m = len(A)
    T = [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    Tinv = [[int(i == j) for j in range(ncols)] for i in range(ncols)]

    def col_op(j, k, q):
        # column j += q * column k
        for r in A:
            r[j] += q * r[k]
        for r in T:
            r[j] += q * r[k]
        # inverse: row k of Tinv -= q * row j
        rk, rj = Tinv[k], Tinv[j]
        for i in range(ncols):
            rk[i] -= q * rj[i]

    def col_swap(j, k):
        for r in A:
            r[j], r[k] = r[k], r[j]
        for r in T:
            r[j], r[k] = r[k], r[j]
        Tinv[j], Tinv[k] = Tinv[k], Tinv[j]

    def col_neg(j):
        for r in A:
            r[j] = -r[j]
        for r in T:
            r[j] = -r[j]
        Tinv[j] = [-x for x in Tinv[j]]

    diag = []
    t = 0
    while t < min(m, ncols):
        best = None
        for i in range(t, m):
            for j in range(t, ncols):
                x = A[i][j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
        if best is None:
            break
        _, i, j = best
        A[t], A[i] = A[i], A[t]
        if j != t:
            col_swap(t, j)
        while True:
            done = True
            p = A[t][t]
            for j in range(t + 1, ncols):
                if A[t][j]:
                    q = A[t][j] // p
                    col_op(j, t, -q)
                    if A[t][j]:
                        done = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q = A[i][t] // p
                    A[i] = [a - q * b for a, b in zip(A[i], A[t])]
                    if A[i][t]:
                        done = False
            if done:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, ncols)
                            if A[i][j] % p), None)
                if bad is None:
                    break
                A[t] = [a + b for a, b in zip(A[t], A[bad[0]])]
                continue
            # move the smallest nonzero entry of row/column t to the corner
            cand = [(abs(A[t][j]), 0, j) for j in range(t, ncols) if A[t][j]]
            cand += [(abs(A[i][t]), 1, i) for i in range(t, m) if A[i][t]]
            _, kind, idx = min(cand)
            if kind == 0 and idx != t:
                col_swap(t, idx)
            elif kind == 1 and idx != t:
                A[t], A[idx] = A[idx], A[t]
        if A[t][t] < 0:
            col_neg(t)
        diag.append(A[t][t])
        t += 1
    return diag, T, Tinv


@dataclass
class QuotientCoordinates:
    """Linear coordinates on ``Z^M / L``.

    ``coords[c]`` is the coordinate vector (sparse dict) of the unit vector
    ``e_c``; ``moduli[i]`` is 0 for a free coordinate, else its order;
    ``basis[i]`` is a lift of the i-th coordinate vector (sparse dict over
    columns).
    """

    coords: list
    moduli: tuple
    basis: list


def quotient_coordinates(ech: Echelon, ncols: int) -> QuotientCoordinates:
    rows = ech.rows
    torsion_pivots = [c for c, r in rows.items() if r[c] != 1]
    if torsion_pivots:
        rows = ech.reduced_rows()
    keep = [c for c in range(ncols) if c not in rows or rows[c][c] != 1]
    pos = {c: i for i, c in enumerate(keep)}

    # projection killing the unit-pivot rows, identity on the kept columns
    proj: list = [None] * ncols
    for c in range(ncols):
        row = rows.get(c)
        if row is None or row[c] != 1:
            proj[c] = {pos[c]: 1}
            continue
        acc: dict = {}
        for j, a in row.items():
            if j != c:
                _axpy(acc, -a, proj[j])
        proj[c] = acc

    if not torsion_pivots:
        return QuotientCoordinates(proj, tuple(0 for _ in keep), [{c: 1} for c in keep])

    rel = []
    for c in sorted(torsion_pivots):
        dense = [0] * len(keep)
        for j, a in rows[c].items():
            if j in pos:
                dense[pos[j]] = a
        rel.append(dense)
    diag, T, Tinv = smith_form(rel, len(keep))
    kept = [i for i in range(len(keep)) if i >= len(diag) or diag[i] != 1]
    moduli = tuple(diag[i] if i < len(diag) else 0 for i in kept)
    where = {i: t for t, i in enumerate(kept)}
    coords = []
    for c in range(ncols):
        y: dict = {}
        for i, a in proj[c].items():
            for t, col in where.items():
                v = T[i][t]
                if v:
                    y[col] = y.get(col, 0) + a * v
        coords.append(_reduce_mod({k: v for k, v in y.items() if v}, moduli))
    basis = []
    for i in kept:
        basis.append({keep[j]: a for j, a in enumerate(Tinv[i]) if a})
    return QuotientCoordinates(coords, moduli, basis)


def _reduce_mod(y: dict, moduli) -> dict:
    out = {}
    for k, v in y.items():
        t = moduli[k]
        if t:
            v %= t
        if v:
            out[k] = v
    return out
