"""Admissible (p, m, a) triples and the classification tables.

A non-symplectic automorphism of odd prime order p on a K3^[2]-type fourfold
determines m and a with rank S = (p-1)m; the candidate triples are filtered by
the counting bounds, by existence of the p-elementary lattice S of signature
(2, (p-1)m - 2), and by existence of the orthogonal complement T inside
U^3 + E8^2 + <-2>.  Each surviving row carries h^*, the Euler characteristic
of the fixed locus, the catalog names of S and T, and uniqueness flags.

For p = 5 the fixed-locus formulas are only valid for automorphisms induced
from K3 surfaces, so that table is restricted to the naturally realized rows
(a static set, like the realization tags) and carries the natural_only flag.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction

from .classify import (
    LatticeInvariants,
    embed_in_L,
    indefinite_p_elementary_exists,
    p_elementary_form_for_signature,
)

SUPPORTED_PRIMES = (3, 5, 7, 11, 13, 17, 19)


class UnsupportedPrime(ValueError):
    """enumerate_triples handles the odd primes 3..19 only."""


class NonIntegerResult(ArithmeticError):
    """A closed-form invariant failed to be an integer (invalid input)."""


def _as_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise NonIntegerResult(f"{what} is not an integer: {x}")
    return int(x)


def h_star(p: int, m: int, a: int) -> int:
    """Total F_p Betti number of the fixed locus:
    324 - 2a(25-a) - (p-2)m(25-2a) + m((p-2)^2 m - p)/2."""
    val = (
        Fraction(324)
        - 2 * a * (25 - a)
        - (p - 2) * m * (25 - 2 * a)
        + Fraction(m * ((p - 2) ** 2 * m - p), 2)
    )
    return _as_int(val, "h_star")


def lefschetz_chi(p: int, m: int) -> int:
    """Euler characteristic of the fixed locus: 324 - (51/2)mp + (1/2)m^2 p^2."""
    val = Fraction(324) - Fraction(51 * m * p, 2) + Fraction(m * m * p * p, 2)
    return _as_int(val, "chi")


def h4_trace(m: int, r: int) -> int:
    """Trace of the action on degree-4 cohomology: (m-r)(m-r-1)/2."""
    return (m - r) * (m - r - 1) // 2


def moduli_dimension(p: int, m: int) -> int:
    """Dimension of the deformation family: m-1 for odd p, m-2 for p = 2."""
    if m < 1:
        raise ValueError("m must be positive")
    return m - 2 if p == 2 else m - 1


@dataclass(frozen=True)
class AdmissibleTriple:
    """One classification row."""

    p: int
    m: int
    a: int
    chi: int
    h_star: int
    s_expr: str
    t_expr: str
    s_rank: int
    t_rank: int
    s_unique_embedding: bool
    embedding_exception: bool
    t_unique_embedding: bool
    moduli_dim: int
    natural_only: bool
    realizations: tuple[str, ...]
    no_known_realization: bool

    @property
    def key(self) -> tuple[int, int, int]:
        return (self.p, self.m, self.a)


# Catalog names of S and T per (p, m, a), in the classification's standard
# presentation (validated against the computed invariants by the test suite).
LATTICE_NAMES: dict[tuple[int, int, int], tuple[str, str]] = {
    (3, 11, 1): ("U^2 + E8^2 + A2", "<6>"),
    (3, 10, 0): ("U^2 + E8^2", "U + <-2>"),
    (3, 10, 2): ("U + U(3) + E8^2", "U(3) + <-2>"),
    (3, 9, 1): ("U^2 + E6 + E8", "U + A2 + <-2>"),
    (3, 9, 3): ("U + U(3) + E6 + E8", "U(3) + A2 + <-2>"),
    (3, 8, 2): ("U^2 + E6^2", "U + A2^2 + <-2>"),
    (3, 8, 4): ("U + U(3) + E6^2", "U(3) + A2^2 + <-2>"),
    (3, 8, 6): ("U^2 + A2^6", "<6> + E6*(3)"),
    (3, 7, 1): ("U^2 + A2 + E8", "U + E6 + <-2>"),
    (3, 7, 3): ("U + U(3) + A2 + E8", "U + A2^3 + <-2>"),
    (3, 7, 5): ("U^2 + A2^5", "U(3) + A2^3 + <-2>"),
    (3, 7, 7): ("U + U(3) + A2^5", "U(3) + E6*(3) + <-2>"),
    (3, 6, 0): ("U^2 + E8", "U + E8 + <-2>"),
    (3, 6, 2): ("U + U(3) + E8", "U + E6 + A2 + <-2>"),
    (3, 6, 4): ("U^2 + A2^4", "U + A2^4 + <-2>"),
    (3, 6, 6): ("U + U(3) + A2^4", "U(3) + A2^4 + <-2>"),
    (3, 5, 1): ("U^2 + E6", "U + E8 + A2 + <-2>"),
    (3, 5, 3): ("U + U(3) + E6", "U + A2^2 + E6 + <-2>"),
    (3, 5, 5): ("U + U(3) + A2^3", "U + A2^5 + <-2>"),
    (3, 4, 2): ("U^2 + A2^2", "U + E6^2 + <-2>"),
    (3, 4, 4): ("U + U(3) + A2^2", "U + E6 + A2^3 + <-2>"),
    (3, 3, 1): ("U^2 + A2", "U + E6 + E8 + <-2>"),
    (3, 3, 3): ("U + U(3) + A2", "U + E6^2 + A2 + <-2>"),
    (3, 2, 0): ("U^2", "U + E8^2 + <-2>"),
    (3, 2, 2): ("U + U(3)", "U + E6 + E8 + A2 + <-2>"),
    (3, 1, 1): ("A2(-1)", "U + E8^2 + A2 + <-2>"),
    (5, 5, 1): ("U + E8^2 + H5", "H5 + <-2>"),
    (5, 4, 2): ("U + H5 + E8 + A4", "H5 + A4 + <-2>"),
    (5, 4, 4): ("U(5) + H5 + E8 + A4", "H5 + A4*(5) + <-2>"),
    (5, 3, 1): ("U + H5 + E8", "H5 + E8 + <-2>"),
    (5, 3, 3): ("U + H5 + A4^2", "H5 + A4^2 + <-2>"),
    (5, 2, 2): ("U + H5 + A4", "H5 + A4 + E8 + <-2>"),
    (5, 1, 1): ("U + H5", "H5 + E8^2 + <-2>"),
    (7, 3, 1): ("U^2 + E8 + A6", "U + K7 + <-2>"),
    (7, 3, 3): ("U + U(7) + E8 + A6", "U(7) + K7 + <-2>"),
    (7, 2, 0): ("U^2 + E8", "U + E8 + <-2>"),
    (7, 2, 2): ("U + U(7) + E8", "U(7) + E8 + <-2>"),
    (7, 1, 1): ("U^2 + K7", "U + E8 + A6 + <-2>"),
    (11, 2, 0): ("U^2 + E8^2", "U + <-2>"),
    (11, 2, 2): ("U + U(11) + E8^2", "U(11) + <-2>"),
    (11, 1, 1): ("K11(-1) + E8", "U + A10 + <-2>"),
    (13, 1, 0): ("U^2 + E8", "U + E8 + <-2>"),
    (13, 1, 1): ("U + E8 + H13", "E8 + H13 + <-2>"),
    (17, 1, 1): ("U^2 + E8 + L17", "U + L17 + <-2>"),
    (19, 1, 1): ("K19(-1) + E8^2", "U + K19 + <-2>"),
}

# Geometric realization tags (static metadata; not computed).
NATURAL = "natural"
FANO = "fano"
REALIZATIONS: dict[tuple[int, int, int], tuple[str, ...]] = {
    (3, 11, 1): (FANO,),
    (3, 8, 6): (FANO,),
    (3, 7, 7): (FANO, NATURAL),
    (3, 5, 5): (FANO, NATURAL),
    (13, 1, 0): (),
}

# Triples whose embedding S -> L is not covered by the uniqueness clause;
# the complement T is still unique in its genus (one-class certificate).
EMBEDDING_EXCEPTIONS = frozenset({(3, 10, 2), (3, 8, 6), (11, 2, 2)})

# The p = 5 rows realized by natural automorphisms (the only ones for which
# the fixed-locus formulas are known to apply).
NATURAL_P5_ROWS = frozenset(
    {(5, 1), (4, 2), (4, 4), (3, 1), (3, 3), (2, 2), (1, 1)}
)


def _realization_tags(key: tuple[int, int, int]) -> tuple[str, ...]:
    if key in REALIZATIONS:
        return REALIZATIONS[key]
    return (NATURAL,)


def enumerate_triples(p: int) -> list[AdmissibleTriple]:
    """All admissible rows for the prime p, in table order (m desc, a asc)."""
    if p not in SUPPORTED_PRIMES:
        raise UnsupportedPrime(f"unsupported prime {p}")
    rows: list[AdmissibleTriple] = []
    m_max = 22 // (p - 1)
    for m in range(m_max, 0, -1):
        rank_s = (p - 1) * m
        if rank_s < 2:
            continue
        for a in range(0, min(rank_s, 23 - rank_s, m) + 1):
            if not indefinite_p_elementary_exists(p, 2, rank_s - 2, a):
                continue
            form = p_elementary_form_for_signature(p, 2, rank_s - 2, a)
            if form is None:
                continue
            s_inv = LatticeInvariants(2, rank_s - 2, p if a else 0, a, form)
            report = embed_in_L(s_inv)
            if not report.embeds:
                continue
            if p == 5 and (m, a) not in NATURAL_P5_ROWS:
                continue
            key = (p, m, a)
            names = LATTICE_NAMES.get(key)
            if names is None:
                raise AssertionError(f"admissible triple {key} has no catalog name")
            rows.append(
                AdmissibleTriple(
                    p=p,
                    m=m,
                    a=a,
                    chi=lefschetz_chi(p, m),
                    h_star=h_star(p, m, a),
                    s_expr=names[0],
                    t_expr=names[1],
                    s_rank=rank_s,
                    t_rank=23 - rank_s,
                    s_unique_embedding=report.unique_embedding,
                    embedding_exception=report.exception_flag,
                    t_unique_embedding=report.t_unique_embedding,
                    moduli_dim=moduli_dimension(p, m),
                    natural_only=(p == 5),
                    realizations=_realization_tags(key),
                    no_known_realization=(key == (13, 1, 0)),
                )
            )
    return rows


def all_tables() -> dict[int, list[AdmissibleTriple]]:
    return {p: enumerate_triples(p) for p in SUPPORTED_PRIMES}


# -- emitters ------------------------------------------------------------------

def _flags(row: AdmissibleTriple) -> str:
    flags = []
    if row.embedding_exception:
        flags.append("embedding-not-unique")
    if row.no_known_realization:
        flags.append("no-known-realization")
    return ",".join(flags)


def table_markdown(p: int, rows: list[AdmissibleTriple] | None = None) -> str:
    rows = enumerate_triples(p) if rows is None else rows
    out = [f"## Order {p}", ""]
    if p == 5:
        out.append("*Natural automorphisms only.*")
        out.append("")
    out.append("| p | m | a | chi | h* | S | T | realized | flags |")
    out.append("|--:|--:|--:|----:|---:|---|---|---|---|")
    for r in rows:
        out.append(
            f"| {r.p} | {r.m} | {r.a} | {r.chi} | {r.h_star} "
            f"| {r.s_expr} | {r.t_expr} | {'+'.join(r.realizations)} | {_flags(r)} |"
        )
    return "\n".join(out) + "\n"


CSV_COLUMNS = (
    "p",
    "m",
    "a",
    "chi",
    "h_star",
    "S",
    "T",
    "realized",
    "s_unique_embedding",
    "embedding_exception",
    "t_unique_embedding",
    "s_rank",
    "t_rank",
    "moduli_dim",
    "natural_only",
    "no_known_realization",
)


def _row_record(r: AdmissibleTriple) -> dict:
    return {
        "p": r.p,
        "m": r.m,
        "a": r.a,
        "chi": r.chi,
        "h_star": r.h_star,
        "S": r.s_expr,
        "T": r.t_expr,
        "realized": "+".join(r.realizations),
        "s_unique_embedding": r.s_unique_embedding,
        "embedding_exception": r.embedding_exception,
        "t_unique_embedding": r.t_unique_embedding,
        "s_rank": r.s_rank,
        "t_rank": r.t_rank,
        "moduli_dim": r.moduli_dim,
        "natural_only": r.natural_only,
        "no_known_realization": r.no_known_realization,
    }


def table_csv(p: int, rows: list[AdmissibleTriple] | None = None) -> str:
    rows = enumerate_triples(p) if rows is None else rows
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
    writer.writeheader()
    for r in rows:
        writer.writerow(_row_record(r))
    return buf.getvalue()


def table_json(p: int, rows: list[AdmissibleTriple] | None = None) -> str:
    rows = enumerate_triples(p) if rows is None else rows
    return json.dumps([_row_record(r) for r in rows], indent=2)


def all_tables_markdown() -> str:
    return "\n".join(table_markdown(p) for p in SUPPORTED_PRIMES)


def all_tables_csv() -> str:
    chunks = []
    for i, p in enumerate(SUPPORTED_PRIMES):
        text = table_csv(p)
        if i:
            text = text.split("\n", 1)[1]  # keep a single header
        chunks.append(text)
    return "".join(chunks)


def all_tables_json() -> str:
    records = []
    for p in SUPPORTED_PRIMES:
        records.extend(_row_record(r) for r in enumerate_triples(p))
    return json.dumps(records, indent=2)
