"""Command line front end.

Exit codes: 0 success / equal, 1 distinguished or failed check, 2 parse
error, 3 missing cached table with ``--no-build``.
"""

from __future__ import annotations

import argparse
import json
import logging
import math
import os
import random
import sys

from .braidcore import (
    BraidWord,
    WordError,
    parse_singular_word,
    parse_word,
    pure_part,
    relators,
)
from .invariants import (
    GROUPS,
    InvariantCombination,
    PipelineConfig,
    compare,
    evaluate,
    invariant_of_combination,
)
from .ncalg.pairs import SpherePair, filtration_degree
from .ncalg.poly import generators, monomial_of
from .ncalg.presentations import PRESENTATION_IDS, relator_set
from .ncalg.tables import CACHE_ENV, MissingTableError, TableStore, graded_ranks

log = logging.getLogger("spherical_vassiliev")

EXIT_EQUAL, EXIT_DISTINGUISHED, EXIT_PARSE, EXIT_CACHE = 0, 1, 2, 3
RELATORS_FOR = {"pn": "artin", "pmn": "mcg_sphere", "ps2": "sphere_braid",
                "bs2": "sphere_braid", "mn": "mcg_sphere"}


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


# ------------------------------------------------------------ rendering

def _labels(store: TableStore, presentation: str, N: int, d: int) -> list:
    table = store.get(relator_set(presentation, N), d)
    G = len(generators(N))
    out = []
    for b in table.basis:
        terms = [(c, ["%d,%d" % generators(N)[a] for a in monomial_of(k, d, G)])
                 for k, c in sorted(b.items())]
        out.append(terms)
    return out


def _coordinates(elem, store: TableStore) -> list:
    rows = []
    for d, (cs, ms) in enumerate(zip(elem.coords, elem.moduli)):
        labels = None
        for k, (c, t) in enumerate(zip(cs, ms)):
            if not c or t == 1:
                continue
            labels = labels or _labels(store, elem.presentation, elem.N, d)
            terms = labels[k]
            row = {"degree": d, "monomial": terms[0][1], "coeff": c}
            if len(terms) > 1 or terms[0][0] != 1:
                row["basis"] = [[a, mono] for a, mono in terms]
            if t:
                row["modulus"] = t
            rows.append(row)
    return rows


def _filtration_json(f):
    return None if f == math.inf else int(f)


def _value_parts(value, store) -> tuple:
    if isinstance(value, SpherePair):
        return _coordinates(value.P, store), _coordinates(value.Q, store)
    return _coordinates(value, store), []


def _perm_json(p) -> list:
    return list(p.images)


def _combination_record(comb: InvariantCombination, config: PipelineConfig, store) -> dict:
    record = {"n": config.n, "m": config.m, "group": config.group}
    if len(comb.terms) == 1:
        (p, value), = comb.terms
        P, Q = _value_parts(value, store)
        record.update(permutation=_perm_json(p), P=P, Q=Q)
    else:
        record.update(permutation=None, P=[], Q=[])
        record["terms"] = []
        for p, value in comb.terms:
            P, Q = _value_parts(value, store)
            record["terms"].append({"permutation": _perm_json(p), "P": P, "Q": Q})
    record["filtration"] = _filtration_json(comb.filtration())
    return record


def _value_record(value, perm, config: PipelineConfig, store) -> dict:
    P, Q = _value_parts(value, store)
    # reported filtration is that of value - 1
    if isinstance(value, SpherePair):
        unit = SpherePair(_unit_like(value.P), value.Q.scale(0))
    else:
        unit = _unit_like(value)
    f = filtration_degree(value - unit)
    return {"n": config.n, "m": config.m, "group": config.group,
            "permutation": _perm_json(perm), "P": P, "Q": Q,
            "filtration": _filtration_json(f)}


def _unit_like(elem):
    coords = tuple(tuple(0 for _ in cs) for cs in elem.coords)
    coords = ((1,) + coords[0][1:],) + coords[1:]
    return type(elem)(elem.presentation, elem.N, elem.m, coords, elem.moduli)


def _human_coords(rows: list, dyadic: bool) -> str:
    if not rows:
        return "0"
    parts = []
    for r in rows:
        mono = "*".join("x" + g for g in r["monomial"]) or "1"
        if "basis" in r:
            mono = "(" + " + ".join(f"{a}*" + ("*".join("x" + g for g in m) or "1")
                                    for a, m in r["basis"]) + ")"
        if "modulus" in r:
            t = r["modulus"]
            mod = f"2^{t.bit_length() - 1}" if dyadic and t & (t - 1) == 0 else str(t)
            parts.append(f"[d{r['degree']}] {r['coeff']} mod {mod} {mono}")
        else:
            parts.append(f"[d{r['degree']}] {r['coeff']} {mono}")
    return "\n    ".join(parts)


def _human(record: dict) -> str:
    lines = [f"group {record['group']}  n={record['n']}  m={record['m']}"]
    for key in ("equal", "permutations_equal", "torsion", "annihilator"):
        if key in record:
            lines.append(f"{key}: {record[key]}")
    if record.get("permutation") is not None:
        lines.append(f"permutation: {record['permutation']}")
    lines.append("P:\n    " + _human_coords(record["P"], False))
    lines.append("Q:\n    " + _human_coords(record["Q"], True))
    for t in record.get("terms", []):
        lines.append(f"term permutation {t['permutation']}")
        lines.append("  P:\n    " + _human_coords(t["P"], False))
        lines.append("  Q:\n    " + _human_coords(t["Q"], True))
    f = record["filtration"]
    lines.append(f"filtration: {'inf' if f is None else f}")
    return "\n".join(lines)


def emit(record: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(record) + "\n")
    else:
        sys.stdout.write(_human(record) + "\n")


# ------------------------------------------------------------- commands

def _store(args) -> TableStore:
    root = args.cache_dir or os.environ.get(CACHE_ENV) or None
    return TableStore(root, build=not args.no_build)


def _config(args) -> PipelineConfig:
    try:
        return PipelineConfig(args.n, args.m, args.group)
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc


def _parse(text: str, n: int):
    try:
        if any(tok.startswith("x") for tok in text.split()):
            return parse_singular_word(text, n)
        return parse_word(text, n)
    except WordError as exc:
        raise CliError(f"cannot parse {text!r}: {exc}", EXIT_PARSE) from exc


def cmd_invariant(args) -> int:
    config, store = _config(args), _store(args)
    word = _parse(args.word or "", args.n)
    if isinstance(word, BraidWord):
        v = evaluate(word, config, store)
        record = _value_record(v.value, v.permutation, config, store)
    else:
        comb = invariant_of_combination(word, config.n, config.m, config.group, store)
        record = _combination_record(comb, config, store)
    emit(record, args.format)
    return EXIT_EQUAL


def cmd_compare(args) -> int:
    config, store = _config(args), _store(args)
    b1, b2 = _parse(args.word or "", args.n), _parse(args.word2 or "", args.n)
    if not (isinstance(b1, BraidWord) and isinstance(b2, BraidWord)):
        raise CliError("compare takes plain braid words", EXIT_PARSE)
    report = compare(b1, b2, config.n, config.m, config.group, store)
    record = _combination_record(report.difference, config, store)
    if len(report.difference.terms) != 1:
        record["permutation"] = None
    record.update(equal=report.equal, permutations_equal=report.permutations_equal,
                  torsion=report.torsion, annihilator=report.annihilator)
    if args.format == "human":
        verdict = "equal" if report.equal else (
            f"distinguished: 2-power torsion, annihilator {report.annihilator}" if report.torsion
            else f"distinguished at filtration {_filtration_json(report.filtration)}")
        sys.stdout.write(verdict + "\n")
    emit(record, args.format)
    return EXIT_EQUAL if report.equal else EXIT_DISTINGUISHED


def random_word(rng: random.Random, n: int, length: int) -> BraidWord:
    return BraidWord(n, [rng.choice((1, -1)) * rng.randint(1, n - 1) for _ in range(length)])


def relator_trial(rng: random.Random, config: PipelineConfig, store, max_len: int = 20) -> bool:
    """Insert a random relator into a random word; True when the value is unchanged."""
    n = config.n
    rels = relators(n, RELATORS_FOR[config.group])
    w = random_word(rng, n, rng.randint(0, max_len))
    if config.group in ("pn", "ps2", "pmn"):
        w = pure_part(w)[0]
    r = rng.choice(rels)
    if rng.random() < 0.5:
        r = r.inverse()
    pos = rng.randint(0, len(w.letters))
    w2 = BraidWord(n, w.letters[:pos] + r.letters + w.letters[pos:])
    return evaluate(w, config, store) == evaluate(w2, config, store)


def cmd_check_relations(args) -> int:
    config, store = _config(args), _store(args)
    rng = random.Random(args.seed)
    if args.trials <= 0:
        log.warning("no trials requested; nothing checked")
    passed = sum(relator_trial(rng, config, store) for _ in range(max(args.trials, 0)))
    failed = max(args.trials, 0) - passed
    record = {"n": config.n, "m": config.m, "group": config.group,
              "relators": RELATORS_FOR[config.group], "seed": args.seed,
              "trials": max(args.trials, 0), "passed": passed, "failed": failed}
    if args.format == "json":
        sys.stdout.write(json.dumps(record) + "\n")
    else:
        sys.stdout.write(f"{RELATORS_FOR[config.group]} relators, group {config.group}, n={config.n}, "
                         f"m={config.m}, seed={args.seed}: {passed} passed, {failed} failed\n")
    return EXIT_EQUAL if failed == 0 else EXIT_DISTINGUISHED


def cmd_gr_ranks(args) -> int:
    store = _store(args)
    rel = relator_set(args.presentation, args.N)
    rows = []
    for d in range(args.m + 1):
        rank, torsion = graded_ranks(rel, d, store)
        rows.append({"degree": d, "rank": rank, "torsion": torsion})
    if args.format == "json":
        sys.stdout.write(json.dumps({"presentation": rel.id, "N": rel.N, "degrees": rows}) + "\n")
    else:
        sys.stdout.write(f"{rel.key}\n")
        for r in rows:
            tors = " ".join(f"Z/{t}" for t in r["torsion"]) or "-"
            sys.stdout.write(f"  d={r['degree']}  rank {r['rank']}  torsion {tors}\n")
    return EXIT_EQUAL


def cmd_build_tables(args) -> int:
    if not (args.cache_dir or os.environ.get(CACHE_ENV)):
        raise CliError("build-tables needs --cache-dir or " + CACHE_ENV, EXIT_PARSE)
    store = TableStore(args.cache_dir or os.environ.get(CACHE_ENV))
    ids = args.presentation or list(PRESENTATION_IDS)
    for pid in ids:
        for N in range(2, args.N + 1):
            for d in range(args.m + 1):
                store.get(relator_set(pid, N), d)
    sys.stdout.write(f"tables ready in {store.cache_dir}\n")
    return EXIT_EQUAL


# --------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="spherical-vassiliev",
        description="Universal finite-type invariants of sphere braids and mapping classes.")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, words: int = 0):
        p.add_argument("--group", choices=GROUPS, default="bs2")
        p.add_argument("--n", type=int, required=True)
        p.add_argument("--m", type=int, default=2)
        p.add_argument("--format", choices=("human", "json"), default="human")
        p.add_argument("--cache-dir", default=None)
        p.add_argument("--no-build", action="store_true")
        if words >= 1:
            p.add_argument("--word", default="")
        if words >= 2:
            p.add_argument("--word2", default="")

    p = sub.add_parser("invariant", help="evaluate K, K_M, lambda, kappa or mu on a word")
    common(p, 1)
    p.set_defaults(func=cmd_invariant)

    p = sub.add_parser("compare", help="compare the invariants of two words")
    common(p, 2)
    p.set_defaults(func=cmd_compare)

    p = sub.add_parser("check-relations", help="randomized relator-insertion suite")
    common(p)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--trials", type=int, default=50)
    p.set_defaults(func=cmd_check_relations)

    p = sub.add_parser("gr-ranks", help="free rank and torsion of graded pieces")
    p.add_argument("--presentation", choices=PRESENTATION_IDS, required=True)
    p.add_argument("--N", type=int, required=True)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--format", choices=("human", "json"), default="human")
    p.add_argument("--cache-dir", default=None)
    p.add_argument("--no-build", action="store_true")
    p.set_defaults(func=cmd_gr_ranks)

    p = sub.add_parser("build-tables", help="build and cache reduction tables")
    p.add_argument("--presentation", choices=PRESENTATION_IDS, action="append")
    p.add_argument("--N", type=int, default=5)
    p.add_argument("--m", type=int, default=3)
    p.add_argument("--cache-dir", default=None)
    p.set_defaults(func=cmd_build_tables)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code
    except MissingTableError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_CACHE
    except WordError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
