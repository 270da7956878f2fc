"""Command-line front end.

Subcommands: invariants, tables, figures, embed, involution, census,
local-actions.  Exit code 1 flags malformed input, 2 a mathematical rejection
(e.g. a Gram matrix that is not an even lattice).  Output is deterministic.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import fixedlocus, involutions, tables
from .classify import NotPElementary, embed_in_L, invariants_of
from .fqf import delta_invariant, form_invariants
from .involutions import TwoElemInvariants
from .lattices import (
    InvalidParameter,
    Lattice,
    NotEvenLattice,
    discriminant_data,
    lattice_from_json,
    realize,
)


class MathRejection(Exception):
    pass


def _load_lattice(source: str) -> Lattice:
    path = Path(source)
    if path.suffix == ".json" and path.exists():
        return lattice_from_json(path.read_text())
    return realize(source)


def _cmd_invariants(args) -> int:
    lat = _load_lattice(args.lattice)
    data = discriminant_data(lat)
    s_plus, s_minus = lat.signature()
    print(f"lattice: {lat.name()}")
    print(f"rank: {lat.rank}")
    print(f"signature: ({s_plus}, {s_minus})")
    print(f"det: {lat.det()}")
    if data.invariant_factors:
        group = " x ".join(f"Z/{d}" for d in data.invariant_factors)
    else:
        group = "trivial"
    print(f"discriminant group: {group}")
    values = ", ".join(str(v) for v in data.form.q) or "-"
    print(f"q on generators (mod 2Z): {values}")
    factors = set(data.invariant_factors)
    if not factors:
        print("p-elementary: true for every p (unimodular, a = 0)")
    elif len(factors) == 1 and _is_prime(next(iter(factors))):
        p = next(iter(factors))
        print(f"p-elementary: true (p={p}, a={len(data.invariant_factors)})")
    else:
        print("p-elementary: false")
    print(f"delta (2-part): {delta_invariant(data.form)}")
    inv = form_invariants(data.form)
    print(f"gauss signature (mod 8): {inv.signature_mod_8}")
    return 0


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)
        if not text.endswith("\n"):
            sys.stdout.write("\n")


def _cmd_tables(args) -> int:
    fmt = args.format
    if args.all:
        text = {
            "md": tables.all_tables_markdown,
            "csv": tables.all_tables_csv,
            "json": tables.all_tables_json,
        }[fmt]()
    else:
        if args.prime is None:
            raise InvalidParameter("need --prime P or --all")
        p = args.prime
        text = {
            "md": tables.table_markdown,
            "csv": tables.table_csv,
            "json": tables.table_json,
        }[fmt](p)
    _emit(text, args.out)
    return 0


def _cmd_figures(args) -> int:
    if args.order != 2:
        raise InvalidParameter("figure charts exist for order 2 only")
    if args.format == "json":
        text = involutions.figure_points_json(args.which)
    else:
        text = involutions.figure_points_text(args.which)
    _emit(text, args.out)
    return 0


def _cmd_embed(args) -> int:
    lat = _load_lattice(args.expr)
    inv = invariants_of(lat)
    report = embed_in_L(inv, recognize_orthogonal=True)
    print(f"S = {lat.name()}: signature ({inv.s_plus}, {inv.s_minus}), "
          f"p-elementary p={inv.p}, a={inv.a}")
    print(f"embeds in U^3 + E8^2 + <-2>: {'yes' if report.embeds else 'no'}")
    if report.embeds:
        t = report.orthogonal_invariants
        print(f"orthogonal complement: signature ({t.s_plus}, {t.s_minus}), "
              f"|A_T| = {t.form.order}")
        if report.orthogonal_expr is not None:
            print(f"orthogonal class: {report.orthogonal_expr}")
        print(f"embedding unique: {'yes' if report.unique_embedding else 'no'}")
        if report.exception_flag:
            print("complement unique in its genus (one-class certificate)")
        print(f"complement embeds uniquely: "
              f"{'yes' if report.t_unique_embedding else 'no'}")
    return 0


def _cmd_involution(args) -> int:
    t = TwoElemInvariants(1, args.r - 1, args.a, args.delta)
    if not involutions.two_elementary_exists(t):
        print(f"no even 2-elementary lattice with (r, a, delta) = "
              f"({args.r}, {args.a}, {args.delta}) and signature (1, {args.r - 1})")
        return 2
    classes = involutions.classify_involution_embeddings(t)
    if not classes:
        print("no primitive embedding in U^3 + E8^2 + <-2>")
        return 0
    for cls in classes:
        s = cls.s_invariants
        print(f"case {cls.case}: S has signature ({s.s_plus}, {s.s_minus}), "
              f"a = {s.a}, delta = {s.delta}")
    return 0


def _cmd_census(args) -> int:
    locus = fixedlocus.k3_fixed_locus_from_json(Path(args.file).read_text())
    census = fixedlocus.hilb2_census(locus)
    print(json.dumps(census.as_dict(), indent=2))
    if args.check:
        p, m, a = (int(x) for x in args.check.split(","))
        ok = fixedlocus.cross_check_totals(census.chi, census.h_star, p, m, a)
        print(f"cross-check against ({p},{m},{a}): {'MATCH' if ok else 'MISMATCH'}")
        return 0 if ok else 2
    return 0


def _cmd_local_actions(args) -> int:
    for rec in fixedlocus.enumerate_local_actions(args.prime):
        exps = ", ".join(f"z^{e}" if e else "1" for e in rec["eigenvalue_exponents"])
        extra = f" (i = {rec['i']})" if "i" in rec else ""
        print(f"family {rec['family']}{extra}: eigenvalues ({exps}) "
              f"multiplicities {rec['multiplicities']} fixed-dim {rec['fixed_dim']}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hklat",
        description="Even-lattice invariants and the prime-order "
        "non-symplectic automorphism classification for K3^[2]-type fourfolds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_inv = sub.add_parser("invariants", help="invariants of a lattice (expr or JSON file)")
    p_inv.add_argument("lattice")
    p_inv.set_defaults(func=_cmd_invariants)

    p_tab = sub.add_parser("tables", help="classification tables")
    p_tab.add_argument("--prime", type=int)
    p_tab.add_argument("--all", action="store_true")
    p_tab.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p_tab.add_argument("--out")
    p_tab.set_defaults(func=_cmd_tables)

    p_fig = sub.add_parser("figures", help="order-2 embedding charts")
    p_fig.add_argument("--order", type=int, default=2)
    p_fig.add_argument("--which", type=int, choices=(1, 2), required=True)
    p_fig.add_argument("--format", choices=("json", "txt"), default="txt")
    p_fig.add_argument("--out")
    p_fig.set_defaults(func=_cmd_figures)

    p_emb = sub.add_parser("embed", help="embedding report for S in U^3 + E8^2 + <-2>")
    p_emb.add_argument("--expr", required=True)
    p_emb.set_defaults(func=_cmd_embed)

    p_invo = sub.add_parser("involution", help="embedding classes of a 2-elementary T")
    p_invo.add_argument("--r", type=int, required=True)
    p_invo.add_argument("--a", type=int, required=True)
    p_invo.add_argument("--delta", type=int, choices=(0, 1), required=True)
    p_invo.set_defaults(func=_cmd_involution)

    p_cen = sub.add_parser("census", help="Hilbert-square fixed-locus census")
    p_cen.add_argument("file")
    p_cen.add_argument("--check", metavar="p,m,a")
    p_cen.set_defaults(func=_cmd_census)

    p_loc = sub.add_parser("local-actions", help="local eigenvalue patterns at fixed points")
    p_loc.add_argument("--prime", type=int, required=True)
    p_loc.set_defaults(func=_cmd_local_actions)

    return parser


def main(argv=None) -> int:
    os.environ.setdefault("HKLAT_THREADS", "1")  # parallelism cap; execution is serial
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (NotEvenLattice, NotPElementary, MathRejection) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (InvalidParameter, ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
