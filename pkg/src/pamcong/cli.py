"""Batch command line: construction, classification, verification, growth.

Every subcommand prints deterministically (same invocation, same bytes) and
exits 0 on success, 1 on usage errors, 2 on validation errors, 3 when a
--verify run finds a mismatch, and 4 when a size bound refuses the request.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import congruence as cg
from . import groups
from . import invariant as inv
from . import oracle
from . import wreath
from . import wreath_normal as wn
from .errors import SizeBoundError, ValidationError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2
EXIT_MISMATCH = 3
EXIT_BOUND = 4


class _Parser(argparse.ArgumentParser):
    """argparse exits 2 on usage problems; the contract here says 1."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}")
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be >= 1, got {value}")
    return value


def _load_group(spec: str) -> groups.FiniteGroup:
    try:
        return groups.make_group(spec)
    except ValidationError as exc:
        raise _UsageError(str(exc)) from exc


class _UsageError(Exception):
    pass


# -- subcommands ------------------------------------------------------------------


def cmd_group(args) -> int:
    G = _load_group(args.spec)
    if args.json:
        print(json.dumps(groups.cayley_document(G), sort_keys=True))
        return EXIT_OK
    normals = groups.all_normal_subgroups(G)
    print(f"{G.name}: order {G.order}, {len(normals)} normal subgroups, "
          f"chief length {groups.chief_length(G)}")
    return EXIT_OK


def cmd_inv_subgroups(args) -> int:
    G = _load_group(args.group)
    m = args.m
    level = inv.enumerate_invariant_normal(G, m)
    print(f"{len(level)} invariant normal subgroups of {G.name}^{m}")
    for K in level:
        print(f"  order {K.order}: {json.dumps(K.describe(), sort_keys=True)}")
    if not args.verify:
        return EXIT_OK
    if G.order ** m > inv.REALIZE_BOUND:
        print(f"--verify refused: |{G.name}^{m}| = {G.order ** m} exceeds "
              f"the realization bound {inv.REALIZE_BOUND}", file=sys.stderr)
        return EXIT_BOUND
    power = groups.direct_power(G, m)
    brute = {S.mask for S in groups.all_normal_subgroups(power)
             if inv.is_permutation_invariant(S)}
    listed = {K.subgroup.mask for K in level}
    if brute != listed:
        for mask in sorted(brute ^ listed):
            side = "missing from" if mask in brute else "extra in"
            print(f"mismatch: subgroup mask {mask:#x} {side} the classification",
                  file=sys.stderr)
            return EXIT_MISMATCH
    print(f"verified against brute force ({len(brute)} subgroups)")
    return EXIT_OK


def cmd_wreath_normal(args) -> int:
    G = _load_group(args.group)
    m = args.m
    triples = wn.classify_all_normal(G, m)
    counted = wn.count_normal_descriptors(G, m)
    if counted != len(triples):
        print(f"internal disagreement: classification lists {len(triples)}, "
              f"count formula says {counted}", file=sys.stderr)
        return EXIT_MISMATCH
    print(f"{len(triples)} normal subgroups of {G.name} wr S_{m}")
    for t in triples:
        print(f"  order {t.order}: {json.dumps(t.describe(), sort_keys=True)}")
    if not args.verify:
        return EXIT_OK
    W = wn.build_wreath_sym(G, m)
    bound = min(wn.WREATH_REALIZE_BOUND, groups.DENSE_TABLE_BOUND)
    if W.order > bound:
        print(f"--verify refused: |{G.name} wr S_{m}| = {W.order} exceeds "
              f"the brute-force bound {bound}", file=sys.stderr)
        return EXIT_BOUND
    brute = {S.mask for S in groups.all_normal_subgroups(W.as_group)}
    listed = {wn.triple_to_subgroup(t, W).mask for t in triples}
    if brute != listed:
        for mask in sorted(brute ^ listed):
            side = "missing from" if mask in brute else "extra in"
            print(f"mismatch: subgroup mask {mask:#x} {side} the classification",
                  file=sys.stderr)
            return EXIT_MISMATCH
    print(f"verified against brute force ({len(brute)} subgroups)")
    return EXIT_OK


def cmd_congruences(args) -> int:
    G = _load_group(args.group)
    n = args.n
    total = cg.count_congruences(G, n)
    is_count = cg.count_idempotent_separating(G, n)
    if args.idempotent_separating:
        print(f"{is_count} idempotent-separating congruences of {G.name} wr I_{n}")
    else:
        print(f"{total} congruences of {G.name} wr I_{n} "
              f"({is_count} idempotent-separating)")
    specs = None
    if args.verify:
        size = wreath.wreath_size(G.order, n)
        bound = oracle.oracle_bound()
        if size > bound:
            print(f"--verify refused: monoid size {size} exceeds the oracle "
                  f"bound {bound} (raise PAMCONG_MAX_ORACLE to override)",
                  file=sys.stderr)
            return EXIT_BOUND
        M = wreath.WreathMonoid(G, n)
        table = oracle.FiniteSemigroupTable.from_monoid(M)
        specs = cg.enumerate_all(M)
        wanted = specs
        found = table.all_congruences()
        if args.idempotent_separating:
            wanted = [s for s in specs if s.m == 1]
            idem = [M.index_of(e) for e in M.idempotents()]
            found = [c for c in found
                     if len({int(c.labels[i]) for i in idem}) == len(idem)]
        by_spec = {cg.extensionalize(s, M): s for s in wanted}
        by_oracle = set(found)
        for ext, s in sorted(by_spec.items(), key=lambda kv: kv[1].key()):
            if ext not in by_oracle:
                print(f"mismatch: {s!r} extensionalizes to a partition the "
                      f"oracle never found: {ext.dump()}", file=sys.stderr)
                return EXIT_MISMATCH
        for ext in found:
            if ext not in by_spec:
                print(f"mismatch: oracle congruence not produced by any spec: "
                      f"{ext.dump()}", file=sys.stderr)
                return EXIT_MISMATCH
        print(f"verified: classification matches the oracle "
              f"({len(by_spec)} congruences)")
    if args.lattice:
        if specs is None:
            specs = cg.enumerate_all(G, n)
        if args.idempotent_separating:
            specs = [s for s in specs if s.m == 1]
        text = cg.lattice_dot(specs, name=f"{G.name}_wr_I{n}")
        with open(args.lattice, "w") as fh:
            fh.write(text + "\n")
        print(f"lattice with {len(specs)} nodes written to {args.lattice}")
    return EXIT_OK


def cmd_growth(args) -> int:
    G = _load_group(args.group)
    report = oracle.growth_experiment(G, args.n_max)
    if args.format == "json":
        print(report.to_json())
    elif args.format == "csv":
        sys.stdout.write(report.to_csv())
    else:
        sys.stdout.write(report.to_text())
    return EXIT_OK


def cmd_mult(args) -> int:
    G = _load_group(args.group)
    x = wreath.WreathElement.parse(args.x)
    y = wreath.WreathElement.parse(args.y, n=x.n)
    M = wreath.WreathMonoid(G, x.n)
    M.validate_element(x)
    M.validate_element(y)
    print(M.multiply(x, y).format())
    return EXIT_OK


# -- wiring -------------------------------------------------------------------------


def build_parser() -> _Parser:
    parser = _Parser(prog="pamcong",
                     description="Partial automorphism monoids of free group "
                                 "actions: classification and verification.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", parents=[], help="inspect a finite group")
    p.add_argument("spec", help='group token, e.g. "S3", "C2xC2"')
    p.add_argument("--json", action="store_true",
                   help="emit the Cayley document instead of the summary")
    p.set_defaults(func=cmd_group)

    p = sub.add_parser("inv-subgroups",
                       help="invariant normal subgroups of G^m")
    p.add_argument("group")
    p.add_argument("m", type=_positive_int)
    p.add_argument("--verify", action="store_true",
                   help="compare with brute force over the realized power")
    p.set_defaults(func=cmd_inv_subgroups)

    p = sub.add_parser("wreath-normal",
                       help="normal subgroups of G wr S_m")
    p.add_argument("group")
    p.add_argument("m", type=_positive_int)
    p.add_argument("--verify", action="store_true",
                   help="compare with brute force over the realized group")
    p.set_defaults(func=cmd_wreath_normal)

    p = sub.add_parser("congruences",
                       help="congruences of G wr I_n")
    p.add_argument("group")
    p.add_argument("n", type=_positive_int)
    p.add_argument("--idempotent-separating", action="store_true",
                   help="restrict to the m = 1 (idempotent-separating) part")
    p.add_argument("--verify", action="store_true",
                   help="cross-check against the brute-force oracle")
    p.add_argument("--lattice", metavar="OUT.dot",
                   help="write the refinement lattice as DOT")
    p.set_defaults(func=cmd_congruences)

    p = sub.add_parser("growth",
                       help="congruence counts for n = 1..n_max")
    p.add_argument("group")
    p.add_argument("n_max", type=_positive_int)
    p.add_argument("--format", choices=("text", "csv", "json"), default="text")
    p.set_defaults(func=cmd_growth)

    p = sub.add_parser("mult", help="multiply two element literals")
    p.add_argument("x", help='element literal, e.g. "(0,1,- ; [2,1,-])"')
    p.add_argument("y")
    p.add_argument("--group", required=True)
    p.set_defaults(func=cmd_mult)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    try:
        return args.func(args)
    except _UsageError as exc:
        print(f"pamcong: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except SizeBoundError as exc:
        print(f"resource bound: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except ValidationError as exc:
        print(f"validation error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION


if __name__ == "__main__":
    sys.exit(main())
