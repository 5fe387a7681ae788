"""Command line entry point: ``classify <command> --k2 K ...``.

Exit codes: 0 success, 1 invariant violation, 2 input error, 3 cap exceeded.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
import time

from .catalog import OrderMismatch, ParseError
from .enumeration import (existing_nodal_surfaces, find_all_components, list_of_types,
                          list_triples)
from .fpcore.todd_coxeter import DEFAULT_COSET_LIMIT
from .geometry import alpha
from .permcore import CapExceeded
from .pipeline import (FORMATS, ConfigError, InvariantViolation, RunConfig, emit, load_catalog,
                       run_pipeline)
from .pi1 import DEFAULT_INDEX_BOUND, compute_pi1

EXIT_OK, EXIT_INVARIANT, EXIT_INPUT, EXIT_CAP = 0, 1, 2, 3


def _k2_list(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a list of integers: {text!r}") from None
    if not vals or any(v not in (2, 4, 6) for v in vals):
        raise argparse.ArgumentTypeError("K^2 must be 2, 4 or 6 (comma separated)")
    return vals


def _table(header, rows, fmt):
    if fmt == "json":
        return json.dumps([dict(zip(header, r)) for r in rows], indent=2) + "\n"
    if fmt == "md":
        lines = ["| " + " | ".join(header) + " |", "|" + "---|" * len(header)]
        lines += ["| " + " | ".join(map(str, r)) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    return "\n".join("\t".join(map(str, r)) for r in [header, *rows]) + "\n"


def cmd_signatures(args) -> int:
    rows = []
    for k2 in args.k2:
        for sig in list_of_types(k2):
            rows.append((k2, str(sig), sig.compact(), str(alpha(sig, k2))))
    sys.stdout.write(_table(("K2", "signature", "compact", "alpha"), rows, args.format))
    return EXIT_OK


def _triples(args):
    catalog = load_catalog(args.catalog)
    out = []
    for k2 in args.k2:
        cands, ledger = list_triples(k2, catalog)
        if args.ledger:
            for e in ledger:
                print(e, file=sys.stderr)
        else:
            print(f"K^2={k2}: {len(ledger)} signature pairs with uncertified group orders "
                  f"(--ledger lists them)", file=sys.stderr)
        out += cands if args.candidates else existing_nodal_surfaces(k2, catalog, cands)
    return out


def cmd_triples(args) -> int:
    rows = [(t.k_squared, str(t.T1), str(t.T2), t.g1, t.g2, t.label, t.group_order)
            for t in _triples(args)]
    sys.stdout.write(_table(("K2", "T1", "T2", "g1", "g2", "G", "order"), rows, args.format))
    return EXIT_OK


def cmd_families(args) -> int:
    rows = []
    for t in _triples(args):
        for f in find_all_components(t):
            s1, s2 = f.representative
            rows.append((t.k_squared, str(t.T1), str(t.T2), t.label, f.class_id,
                         " ".join(map(str, s1.perms())), " ".join(map(str, s2.perms()))))
    sys.stdout.write(_table(("K2", "T1", "T2", "G", "family", "S1", "S2"), rows, args.format))
    return EXIT_OK


def cmd_pi1(args) -> int:
    rows = []
    for t in _triples(args):
        for f in find_all_components(t):
            rep = compute_pi1(*f.representative, coset_limit=args.coset_limit,
                              probe_structure=not args.no_structure, index_bound=args.index_bound)
            order = "" if rep.finite_order is None else rep.finite_order
            rows.append((t.k_squared, str(t.T1), str(t.T2), t.label, f.class_id, str(rep.h1),
                         order, rep.summary(), rep.presentation.ngens))
            if args.presentations:
                print(f"# {t} family {f.class_id}", file=sys.stderr)
                print(rep.presentation.to_text(), file=sys.stderr)
    sys.stdout.write(_table(("K2", "T1", "T2", "G", "family", "H1", "order", "pi1", "ngens"),
                            rows, args.format))
    return EXIT_OK


def cmd_report(args) -> int:
    cfg = RunConfig(k_squared=args.k2, catalog_paths=tuple(args.catalog),
                    coset_limit=args.coset_limit, index_bound=args.index_bound,
                    output_format=args.format, parallelism=args.jobs)
    result = run_pipeline(cfg)
    sys.stdout.write(emit(result.rows, args.format))
    if args.ledger:
        with open(args.ledger, "w", encoding="utf-8") as fh:
            fh.write("".join(line + "\n" for line in result.ledger))
    for c in result.cap_hits:
        print("cap hit:", c, file=sys.stderr)
    return EXIT_CAP if result.cap_hits else EXIT_OK


def selftest_checks():
    """Quick checks of each layer; yields (name, passed)."""
    from .catalog import alternating, parse_catalog
    from .enumeration import exists_spherical, SphericalSystem
    from .permcore import PermGroup, Permutation
    from .fpcore.snf import smith_normal_form

    yield "signature counts 14/24/24", [len(list_of_types(k)) for k in (2, 4, 6)] == [14, 24, 24]
    cat = parse_catalog("group PSL27\ndegree 7\ngen (3,4)(5,6)\ngen (1,2,3)(4,5,7)\nend\n")
    yield "catalog stanza closes to order 168", cat.entries[0].group.order == 168
    yield "A7 is not a (2,3,7) quotient", not exists_spherical(alternating(7).group, (2, 3, 7))
    yield "Smith form of [[2,4],[6,8]] is diag(2,4)", list(smith_normal_form([[2, 4], [6, 8]])) == [2, 4]
    G = PermGroup(7, [Permutation.parse("(34)(56)", 7), Permutation.parse("(123)(457)", 7)])
    s1 = SphericalSystem.from_perms(G, ["(13)(26)", "(127)(345)", "(1762354)"])
    s2 = SphericalSystem.from_perms(G, ["(1632)(47)", "(1524)(36)", "(1743)(25)"])
    rep = compute_pi1(s1, s2, probe_structure=False)
    yield "PSL(2,7) family has pi1 = Z2^2", (str(rep.h1), rep.finite_order) == ("Z2^2", 4)


def cmd_selftest(args) -> int:
    ok = True
    for name, passed in selftest_checks():
        print(f"{'PASS' if passed else 'FAIL'}  {name}")
        ok &= bool(passed)
    return EXIT_OK if ok else EXIT_INVARIANT


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="classify",
                                description="Product-quotient surfaces with p_g = q = 0 and K^2 = 2, 4, 6.")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, k2_default=None):
        sp.add_argument("--k2", type=_k2_list, default=k2_default, required=k2_default is None,
                        help="K^2 value(s), comma separated")
        sp.add_argument("--format", choices=FORMATS, default="tsv")

    def with_catalog(sp):
        sp.add_argument("--catalog", action="append", default=[], metavar="F",
                        help="catalog file replacing the builtin catalog (repeatable)")
        sp.add_argument("--ledger", action="store_true",
                        help="print the skipped-order ledger to stderr")
        sp.add_argument("--candidates", action="store_true",
                        help="list triples before the node condition")

    sp = sub.add_parser("signatures", help="signatures satisfying the numerical conditions")
    common(sp)
    sp.set_defaults(func=cmd_signatures)

    sp = sub.add_parser("triples", help="(T1, T2, G) admitting a nodal pair of systems")
    common(sp)
    with_catalog(sp)
    sp.set_defaults(func=cmd_triples)

    sp = sub.add_parser("families", help="one representative per family")
    common(sp)
    with_catalog(sp)
    sp.set_defaults(func=cmd_families)

    sp = sub.add_parser("pi1", help="fundamental group data per family")
    common(sp)
    with_catalog(sp)
    sp.add_argument("--coset-limit", type=int, default=DEFAULT_COSET_LIMIT)
    sp.add_argument("--index-bound", type=int, default=DEFAULT_INDEX_BOUND)
    sp.add_argument("--no-structure", action="store_true")
    sp.add_argument("--presentations", action="store_true",
                    help="print simplified presentations to stderr")
    sp.set_defaults(func=cmd_pi1)

    sp = sub.add_parser("report", help="the full table")
    common(sp, k2_default=(2, 4, 6))
    sp.add_argument("--catalog", action="append", default=[], metavar="F")
    sp.add_argument("--coset-limit", type=int, default=DEFAULT_COSET_LIMIT)
    sp.add_argument("--index-bound", type=int, default=DEFAULT_INDEX_BOUND)
    sp.add_argument("--jobs", type=int, default=1, help="worker processes (CLASSIFY_THREADS overrides)")
    sp.add_argument("--ledger", metavar="FILE", help="write the skip/cap ledger to FILE")
    sp.set_defaults(func=cmd_report)

    sp = sub.add_parser("selftest", help="quick consistency checks")
    sp.set_defaults(func=cmd_selftest)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    t0 = time.time()
    try:
        code = args.func(args)
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return EXIT_INVARIANT
    except CapExceeded as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except (ConfigError, ParseError, OrderMismatch, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    logging.getLogger(__name__).info("done in %.1f s", time.time() - t0)
    return code


if __name__ == "__main__":
    sys.exit(main())
