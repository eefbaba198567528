"""Degreewise reduction tables for quotient algebras, their on-disk cache,
and canonical elements.

The degree-d table of a presentation stores, for every monomial of degree d,
its coordinate vector in the quotient ``Z<x>_d / I_d`` together with the
torsion modulus of each coordinate (0 for free).
"""

from __future__ import annotations

import contextlib
import fcntl
import logging
import os
import tempfile
import zlib
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy import sparse

from .lattice import Echelon, quotient_coordinates
from .poly import NCPoly, Series, generators, monomial_index, monomial_of
from .presentations import RelatorSet, relator_set

log = logging.getLogger(__name__)

CACHE_VERSION = "VASS-CACHE-1"
CACHE_ENV = "VASS_CACHE_DIR"


class CacheError(RuntimeError):
    pass


class CacheVersionError(CacheError):
    pass


class CacheChecksumError(CacheError):
    pass


class CacheParameterError(CacheError):
    pass


class MissingTableError(CacheError):
    pass


@dataclass
class ReductionTable:
    presentation: str
    N: int
    d: int
    basis: list       # lifts: sparse dict {monomial index: coefficient}
    moduli: tuple     # 0 = free coordinate
    coords: list      # per monomial index: sparse dict {coordinate: value}

    @property
    def G(self) -> int:
        return len(generators(self.N))

    @property
    def rank(self) -> int:
        return sum(1 for t in self.moduli if t == 0)

    @property
    def torsion(self) -> list:
        return sorted(t for t in self.moduli if t)

    def matrix(self):
        cached = getattr(self, "_matrix", None)
        if cached is None:
            rows, cols, vals = [], [], []
            for r, y in enumerate(self.coords):
                for c, v in y.items():
                    rows.append(r)
                    cols.append(c)
                    vals.append(v)
            cached = sparse.csr_matrix(
                (np.array(vals, dtype=np.int64), (rows, cols)),
                shape=(len(self.coords), len(self.moduli)), dtype=np.int64)
            self._matrix = cached
        return cached

    def reduce_block(self, block) -> tuple:
        """Canonical coordinates of a dense degree-d vector."""
        if not self.moduli:
            return ()
        y = self.matrix().T.dot(np.asarray(block, dtype=np.int64))
        return tuple(int(v) % t if t else int(v) for v, t in zip(y, self.moduli))

    def reduce_dict(self, vec: dict) -> tuple:
        y = [0] * len(self.moduli)
        for idx, c in vec.items():
            for k, v in self.coords[idx].items():
                y[k] += c * v
        return tuple(v % t if t else v for v, t in zip(y, self.moduli))

    def lift(self, coords) -> dict:
        out: dict = {}
        for c, b in zip(coords, self.basis):
            if c:
                for idx, v in b.items():
                    out[idx] = out.get(idx, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def __eq__(self, other) -> bool:
        return isinstance(other, ReductionTable) and (
            self.presentation, self.N, self.d, self.basis, self.moduli, self.coords) == (
            other.presentation, other.N, other.d, other.basis, other.moduli, other.coords)


def span_rows(rel: RelatorSet, d: int):
    """All padded relators u*r*v of total degree d, as sparse dicts."""
    G = rel.G
    for r in rel.relators:
        e = len(next(iter(r)))
        if e > d:
            continue
        body = [(monomial_index(mono, G), c) for mono, c in sorted(r.items())]
        for a in range(d - e + 1):
            b = d - e - a
            shift_u = G ** (e + b)
            shift_r = G ** b
            for iu in range(G ** a):
                for iv in range(G ** b):
                    yield {iu * shift_u + ir * shift_r + iv: c for ir, c in body}


def build_reduction_table(rel: RelatorSet, d: int) -> ReductionTable:
    if d < 0:
        raise ValueError("degree must be non-negative")
    G = rel.G
    size = G ** d
    ech = Echelon()
    for row in span_rows(rel, d):
        ech.insert(row)
    q = quotient_coordinates(ech, size)
    log.debug("built %s d=%d: %d monomials, rank %d", rel.key, d, size, len(q.moduli))
    return ReductionTable(rel.id, rel.N, d, q.basis, q.moduli, q.coords)


# ------------------------------------------------------------ serialization

def _mono_str(idx: int, d: int, N: int) -> str:
    if d == 0:
        return "1"
    gs = generators(N)
    return ".".join("%d,%d" % gs[a] for a in monomial_of(idx, d, len(gs)))


def _parse_mono(text: str, N: int) -> int:
    if text == "1":
        return 0
    gs = {g: t for t, g in enumerate(generators(N))}
    mono = []
    for part in text.split("."):
        i, j = part.split(",")
        mono.append(gs[(int(i), int(j))])
    return monomial_index(mono, len(gs))


def _basis_str(b: dict, t: int, d: int, N: int) -> str:
    if len(b) == 1 and next(iter(b.values())) == 1:
        body = _mono_str(next(iter(b)), d, N)
    else:
        body = "+".join(f"{c}*{_mono_str(k, d, N)}" for k, c in sorted(b.items()))
    return body + (f"%{t}" if t else "")


def _parse_basis(text: str, d: int, N: int):
    body, _, t = text.partition("%")
    t = int(t) if t else 0
    if "*" not in body:
        return {_parse_mono(body, N): 1}, t
    b = {}
    for term in body.split("+"):
        c, mono = term.split("*")
        b[_parse_mono(mono, N)] = int(c)
    return b, t


def dumps_table(table: ReductionTable) -> bytes:
    N, d = table.N, table.d
    lines = [CACHE_VERSION, f"presentation={table.presentation} N={N} d={d}"]
    lines.append(" ".join([str(len(table.basis))]
                          + [_basis_str(b, t, d, N) for b, t in zip(table.basis, table.moduli)]))
    for idx, y in enumerate(table.coords):
        coords = ",".join(f"{k}:{v}" for k, v in sorted(y.items())) or "-"
        mods = ",".join(f"{k}:{table.moduli[k]}" for k in sorted(y) if table.moduli[k]) or "-"
        lines.append(f"{_mono_str(idx, d, N)} {coords} {mods}")
    body = ("\n".join(lines) + "\n").encode()
    return body + f"{zlib.crc32(body)}\n".encode()


def loads_table(data: bytes, rel: RelatorSet | None = None, d: int | None = None) -> ReductionTable:
    head, sep, last = data.rstrip(b"\n").rpartition(b"\n")
    body = head + sep
    lines = body.decode().split("\n")
    if not lines or lines[0] != CACHE_VERSION:
        raise CacheVersionError(f"expected {CACHE_VERSION!r}, found {lines[0]!r}")
    try:
        ok = int(last) == zlib.crc32(body)
    except ValueError:
        ok = False
    if not ok:
        raise CacheChecksumError("cache checksum does not match")
    fields = dict(kv.split("=") for kv in lines[1].split())
    pid, N, deg = fields["presentation"], int(fields["N"]), int(fields["d"])
    if rel is not None and (pid, N) != (rel.id, rel.N) or d is not None and deg != d:
        raise CacheParameterError(
            f"cache holds {pid}({N}) d={deg}, wanted {rel.key if rel else '?'} d={d}")
    head3 = lines[2].split(" ")
    basis, moduli = [], []
    for text in head3[1:]:
        b, t = _parse_basis(text, deg, N)
        basis.append(b)
        moduli.append(t)
    if int(head3[0]) != len(basis):
        raise CacheError("basis size does not match the basis list")
    coords = []
    for idx, line in enumerate(lines[3:-1]):
        mono, cs, _ = line.split(" ")
        if _parse_mono(mono, N) != idx:
            raise CacheError(f"monomial {mono} out of order")
        y = {}
        if cs != "-":
            for kv in cs.split(","):
                k, v = kv.split(":")
                y[int(k)] = int(v)
        coords.append(y)
    if len(coords) != len(generators(N)) ** deg:
        raise CacheError("cache has the wrong number of monomial lines")
    return ReductionTable(pid, N, deg, basis, tuple(moduli), coords)


def cache_path(root, presentation: str, N: int, d: int) -> Path:
    return Path(root) / f"{presentation}_N{N}_d{d}.vass"


@contextlib.contextmanager
def _locked(root: Path):
    root.mkdir(parents=True, exist_ok=True)
    with open(root / ".lock", "w") as fh:
        fcntl.flock(fh, fcntl.LOCK_EX)
        try:
            yield
        finally:
            fcntl.flock(fh, fcntl.LOCK_UN)


def table_cache(op: str, rel: RelatorSet, d: int, path, table: ReductionTable | None = None):
    """``op`` is "load" or "store"; ``path`` is the cache root directory."""
    root = Path(path)
    target = cache_path(root, rel.id, rel.N, d)
    if op == "load":
        if not target.exists():
            raise MissingTableError(f"no cached table {target}")
        return loads_table(target.read_bytes(), rel, d)
    if op == "store":
        if table is None:
            raise ValueError("store needs a built table")
        if (table.presentation, table.N, table.d) != (rel.id, rel.N, d):
            raise CacheParameterError("table parameters do not match the request")
        data = dumps_table(table)
        with _locked(root):
            fd, tmp = tempfile.mkstemp(dir=root, prefix=".tmp-")
            with os.fdopen(fd, "wb") as fh:
                fh.write(data)
            os.replace(tmp, target)
        return None
    raise ValueError(f"unknown cache operation {op!r}")


class TableStore:
    """Tables by (presentation, N, d): memory first, then the cache directory,
    then a fresh build (unless ``build`` is off)."""

    def __init__(self, cache_dir=None, build: bool = True):
        self.cache_dir = Path(cache_dir) if cache_dir else None
        self.build = build
        self._tables: dict = {}

    def get(self, rel: RelatorSet, d: int) -> ReductionTable:
        key = (rel.id, rel.N, d)
        table = self._tables.get(key)
        if table is not None:
            return table
        if self.cache_dir is not None and cache_path(self.cache_dir, *key).exists():
            table = table_cache("load", rel, d, self.cache_dir)
        elif not self.build:
            raise MissingTableError(f"table {rel.key} d={d} not cached and building is disabled")
        else:
            table = build_reduction_table(rel, d)
            if self.cache_dir is not None:
                table_cache("store", rel, d, self.cache_dir, table)
        self._tables[key] = table
        return table


_default_store: TableStore | None = None


def default_store() -> TableStore:
    global _default_store
    if _default_store is None:
        _default_store = TableStore(os.environ.get(CACHE_ENV) or None)
    return _default_store


def set_default_store(store: TableStore | None) -> None:
    global _default_store
    _default_store = store


# ------------------------------------------------------- canonical elements

@dataclass(frozen=True)
class CanonicalElement:
    presentation: str
    N: int
    m: int
    coords: tuple     # per degree: tuple of coordinates
    moduli: tuple     # per degree: tuple of moduli (0 = free)

    def degree(self, d: int) -> tuple:
        return self.coords[d]

    def is_zero(self) -> bool:
        return not any(any(c) for c in self.coords)

    def _combine(self, other: "CanonicalElement", a: int, b: int) -> "CanonicalElement":
        if (self.presentation, self.N, self.m) != (other.presentation, other.N, other.m):
            raise ValueError("elements live in different algebras")
        coords = []
        moduli = []
        for cs, ms, ct, mt in zip(self.coords, self.moduli, other.coords, other.moduli):
            mods = tuple(_gcd0(x, y) for x, y in zip(ms, mt))
            coords.append(tuple(_mod(a * x + b * y, t) for x, y, t in zip(cs, ct, mods)))
            moduli.append(mods)
        return CanonicalElement(self.presentation, self.N, self.m, tuple(coords), tuple(moduli))

    def __add__(self, other):
        return self._combine(other, 1, 1)

    def __sub__(self, other):
        return self._combine(other, 1, -1)

    def __neg__(self):
        return self.scale(-1)

    def scale(self, c: int) -> "CanonicalElement":
        return self._combine(self, c, 0)

    def with_moduli(self, moduli) -> "CanonicalElement":
        """Coarsen coordinate moduli (each new modulus must divide the old one)."""
        coords = tuple(tuple(_mod(x, t) for x, t in zip(cs, ms)) for cs, ms in zip(self.coords, moduli))
        return CanonicalElement(self.presentation, self.N, self.m, coords, tuple(map(tuple, moduli)))

    def reduce_mod(self, k: int) -> "CanonicalElement":
        """Reduce all coefficients modulo an integer k."""
        moduli = tuple(tuple(_gcd0(t, k) for t in ms) for ms in self.moduli)
        return self.with_moduli(moduli)

    def additive_order(self):
        """Order in the additive group, or None when infinite."""
        order = 1
        for cs, ms in zip(self.coords, self.moduli):
            for c, t in zip(cs, ms):
                if not c:
                    continue
                if not t:
                    return None
                order = _lcm(order, t // _gcd0(c, t))
        return order

    def filtration(self):
        for d, cs in enumerate(self.coords):
            if any(cs):
                return d
        return float("inf")


def _gcd0(a: int, b: int) -> int:
    from math import gcd
    return gcd(a, b)


def _lcm(a: int, b: int) -> int:
    from math import lcm
    return lcm(a, b)


def _mod(x: int, t: int) -> int:
    return x % t if t else x


class Algebra:
    """The quotient ``Z<x_ij> / (relators)`` truncated above degree m."""

    def __init__(self, rel: RelatorSet | str, N: int | None = None, m: int = 0,
                 store: TableStore | None = None):
        if isinstance(rel, str):
            rel = relator_set(rel, N)
        self.rel = rel
        self.N = rel.N
        self.m = m
        self.store = store or default_store()

    def table(self, d: int) -> ReductionTable:
        return self.store.get(self.rel, d)

    def tables(self) -> list:
        return [self.table(d) for d in range(self.m + 1)]

    def _element(self, coords) -> CanonicalElement:
        moduli = tuple(self.table(d).moduli for d in range(self.m + 1))
        return CanonicalElement(self.rel.id, self.N, self.m, tuple(coords), moduli)

    def reduce_series(self, s: Series) -> CanonicalElement:
        return self._element([self.table(d).reduce_block(s.blocks[d]) for d in range(self.m + 1)])

    def reduce(self, u: NCPoly) -> CanonicalElement:
        if u.N != self.N:
            raise ValueError(f"polynomial over N={u.N}, algebra over N={self.N}")
        by_degree = [dict() for _ in range(self.m + 1)]
        G = len(generators(self.N))
        for mono, c in u.coeffs.items():
            if len(mono) <= self.m:
                by_degree[len(mono)][monomial_index(mono, G)] = c
        return self._element([self.table(d).reduce_dict(v) for d, v in enumerate(by_degree)])

    def one(self) -> CanonicalElement:
        return self.reduce(NCPoly.one(self.N, self.m))

    def zero(self) -> CanonicalElement:
        return self.reduce(NCPoly(self.N, self.m, {}))

    def lift(self, u: CanonicalElement) -> Series:
        s = Series.zero(self.N, self.m)
        for d in range(self.m + 1):
            for idx, v in self.table(d).lift(u.coords[d]).items():
                s.blocks[d][idx] += v
        return s

    def to_poly(self, u: CanonicalElement) -> NCPoly:
        return self.lift(u).to_poly()

    def mul(self, u: CanonicalElement, v: CanonicalElement) -> CanonicalElement:
        return self.reduce_series(self.lift(u) * self.lift(v))

    def basis_monomials(self, d: int) -> list:
        """Readable label for each degree-d coordinate."""
        table = self.table(d)
        out = []
        for b in table.basis:
            terms = [(monomial_of(k, d, table.G), c) for k, c in sorted(b.items())]
            out.append(terms)
        return out


def reduce_canonical(u: NCPoly, rel: RelatorSet, store: TableStore | None = None) -> CanonicalElement:
    return Algebra(rel, m=u.m, store=store).reduce(u)


def graded_ranks(rel: RelatorSet, d: int, store: TableStore | None = None) -> tuple:
    table = (store or default_store()).get(rel, d)
    return table.rank, table.torsion
