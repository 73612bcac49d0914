"""Command-line front end.

Exit status: 0 on success, 1 when a requested check fails (any violated
identity or a nonzero nonexistence count), 2 on usage or input errors.
Reports are deterministic for fixed inputs; `--machine` switches to the
key-value block format.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import chartable, dixon, dl_rank1, regunip, rigidity, smallgrp


def _add_threads(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--threads", type=int, default=0, metavar="N",
        help="bound internal parallelism (execution is serial and exact; "
             "output never depends on this value)")


def build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(
        prog="rigikit",
        description="Exact character-table computations: validation, "
                    "structure constants, rigidity verdicts, Dixon tables, "
                    "rank-1 Deligne-Lusztig checks, and regular-unipotent "
                    "order filters.")
    sub = top.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="run the table invariant suite on a CTB file")
    p.add_argument("table", help="CTB v1 file")
    p.add_argument("--no-orthogonality", action="store_true",
                   help="structural checks only")
    _add_threads(p)

    p = sub.add_parser("structconst",
                       help="product-1 triple count and nontrivial character sum")
    p.add_argument("table")
    p.add_argument("classes", nargs=3, metavar="CLASS",
                   help="three class names, e.g. 2A 3A 7A")
    p.add_argument("--machine", action="store_true")
    _add_threads(p)

    p = sub.add_parser("rigid", help="rigidity verdict for a class triple")
    p.add_argument("table")
    p.add_argument("classes", nargs=3, metavar="CLASS")
    p.add_argument("--center", type=int, default=1, metavar="Z",
                   help="order of the center (default 1)")
    p.add_argument("--assume-generation", action="store_true",
                   help="treat generation by every triple as established")
    p.add_argument("--machine", action="store_true")
    _add_threads(p)

    p = sub.add_parser("dixon",
                       help="enumerate a matrix group and emit its exact "
                            "character table as CTB")
    p.add_argument("group", help="group spec: SL(n,p) GL(n,p) SO(2m,p) "
                                 "PSL(2,p) PGL(2,p), or @file of generators")
    p.add_argument("--cap", type=int, default=smallgrp.DEFAULT_CLOSURE_CAP)
    p.add_argument("--projective", action="store_true",
                   help="with @file generators: take the group modulo scalars")
    _add_threads(p)

    p = sub.add_parser("dl",
                       help="build a generic rank-1 table (GL2/SL2/PGL2 at q) "
                            "and run identity checks or emit CTB")
    p.add_argument("--family", required=True, choices=["GL2", "SL2", "PGL2"])
    p.add_argument("--q", required=True, type=int)
    p.add_argument("--emit", action="store_true", help="print the CTB table")
    p.add_argument("--check", choices=["valuni", "sums", "ssvals", "cosets", "all"],
                   help="run the named identity suite")
    p.add_argument("--machine", action="store_true")
    _add_threads(p)

    p = sub.add_parser("dualsym",
                       help="dual-group symmetry of semisimple character values")
    p.add_argument("--pair", required=True, choices=["GL2", "SL2PGL2"],
                   help="GL2 self-dual, or the SL2/PGL2 dual pair")
    p.add_argument("--q", required=True, type=int)
    p.add_argument("--regular", action="store_true",
                   help="check the regular-character variant instead")
    p.add_argument("--machine", action="store_true")
    _add_threads(p)

    p = sub.add_parser("regunip",
                       help="regular-unipotent element orders and the "
                            "overgroup pruning filter")
    p.add_argument("--type", required=True, dest="gtype",
                   choices=sorted(regunip.EXCEPTIONAL_TYPES))
    p.add_argument("--p", required=True, type=int)
    p.add_argument("--filter", action="store_true",
                   help="filter the candidate pool at (type, p)")
    p.add_argument("--pool", metavar="FILE",
                   help="candidate pool file (default: the shipped fixture)")
    p.add_argument("--two-classes", action="store_true",
                   help="also exclude candidates with cyclic Sylow p-subgroup")
    _add_threads(p)

    p = sub.add_parser("lemma",
                       help="brute-force nonexistence counts for "
                            "(involution, quadratic unipotent, regular "
                            "unipotent) triples")
    lemma_sub = p.add_subparsers(dest="lemma_kind", required=True)
    psl = lemma_sub.add_parser("sl", help="special linear groups")
    psl.add_argument("--n", required=True, type=int)
    psl.add_argument("--q", required=True, type=int)
    psl.add_argument("--cap", type=int, default=smallgrp.DEFAULT_ORBIT_CAP)
    _add_threads(psl)
    pso = lemma_sub.add_parser("so", help="even orthogonal groups SO_{2m}")
    pso.add_argument("--m", required=True, type=int)
    pso.add_argument("--q", required=True, type=int)
    pso.add_argument("--cap", type=int, default=smallgrp.DEFAULT_CLOSURE_CAP)
    _add_threads(pso)

    return top


def _load_table(path: str) -> chartable.CharacterTable:
    text = Path(path).read_text()
    return chartable.parse_ctb(text)


def _resolve_classes(table, names):
    return rigidity.ClassTriple(*(table.class_index(n) for n in names))


def cmd_validate(args) -> int:
    table = _load_table(args.table)
    report = chartable.validate(table, orthogonality=not args.no_orthogonality)
    print("table %s: order %d, %d classes" % (table.name, table.order,
                                              table.n_classes))
    print(report)
    return 0 if report.ok else 1


def cmd_structconst(args) -> int:
    table = _load_table(args.table)
    triple = _resolve_classes(table, args.classes)
    n = rigidity.frobenius_count(table, triple)
    f = rigidity.nontrivial_sum(table, triple)
    if args.machine:
        print("N = %d" % n)
        print("f = %s" % f)
    else:
        print("triples (%s, %s, %s) with product 1: N = %d"
              % (args.classes[0], args.classes[1], args.classes[2], n))
        print("nontrivial character sum f = %s" % f)
    return 0


def cmd_rigid(args) -> int:
    table = _load_table(args.table)
    triple = _resolve_classes(table, args.classes)
    report = rigidity.rigidity_verdict(
        table, triple, center_order=args.center,
        generation_assumed=args.assume_generation)
    print(report.machine_block() if args.machine else report.text_report())
    return 0


def cmd_dixon(args) -> int:
    if args.group.startswith("@"):
        text = Path(args.group[1:]).read_text()
        gens = smallgrp.parse_generator_file(text, projective=args.projective)
        group = smallgrp.closure(gens, cap=args.cap,
                                 kind="PSL" if args.projective else "GL")
    else:
        group = smallgrp.group_from_spec(args.group, cap=args.cap)
    table = dixon.character_table_dixon(group)
    sys.stdout.write(chartable.emit_ctb(table))
    return 0


def cmd_dl(args) -> int:
    fam = dl_rank1.build_family(args.family, args.q)
    status = 0
    if args.emit or not args.check:
        sys.stdout.write(chartable.emit_ctb(fam.table))
    if args.check:
        reports = []
        if args.check in ("valuni", "all"):
            reports.append(dl_rank1.theta_independence(fam)[0])
        if args.check in ("sums", "all"):
            reports.append(dl_rank1.vanishing_sum_report(fam))
        if args.check in ("ssvals", "cosets", "all"):
            dual = fam if fam.family == "GL2" else dl_rank1.build_family(
                "PGL2" if fam.family == "SL2" else "SL2", args.q)
            if args.check in ("ssvals", "all"):
                reports.append(dl_rank1.unipotent_values_report(fam, dual))
            if args.check in ("cosets", "all"):
                reports.append(dl_rank1.coset_values_report(fam, dual))
        for rep in reports:
            if args.machine:
                print(rep.machine_block())
            else:
                bad = [i for i in rep.items if not i.ok]
                print("%s: %d identities, %s"
                      % (rep.title, len(rep.items),
                         "all pass" if not bad else "%d FAIL" % len(bad)))
                for i in bad:
                    print("  FAIL %s: %s" % (i.name, i.detail))
            if not rep.ok:
                status = 1
    return status


def cmd_dualsym(args) -> int:
    if args.pair == "GL2":
        fam = dl_rank1.build_family("GL2", args.q)
        dual = fam
    else:
        fam = dl_rank1.build_family("SL2", args.q)
        dual = dl_rank1.build_family("PGL2", args.q)
    rep = dl_rank1.dual_symmetry_report(fam, dual, regular=args.regular)
    if args.machine:
        print(rep.machine_block())
    else:
        bad = [i for i in rep.items if not i.ok]
        print("%s at q = %d: %d pairs, %s"
              % (rep.title, args.q, len(rep.items),
                 "all pass" if not bad else "%d FAIL" % len(bad)))
        for i in bad:
            print("  FAIL %s: %s" % (i.name, i.detail))
    return 0 if rep.ok else 1


def cmd_regunip(args) -> int:
    order = regunip.regular_unipotent_order(args.gtype, args.p)
    print("order = %d" % order)
    if not args.filter:
        return 0
    if args.pool:
        pool = regunip.parse_pool(Path(args.pool).read_text())
    else:
        pool = regunip.load_pool()
    verdicts = regunip.filter_candidates(
        args.gtype, args.p, pool,
        require_two_unipotent_classes=args.two_classes)
    for v in sorted(verdicts, key=lambda v: (not v.survives, v.label)):
        print(v.line())
    print("survivors = %s"
          % (",".join(sorted(v.label for v in verdicts if v.survives)) or "none"))
    return 0


def cmd_lemma(args) -> int:
    if args.lemma_kind == "sl":
        counts = smallgrp.lemma_sl_triple_count(args.n, args.q, orbit_cap=args.cap)
        what = "SL%d(%d)" % (args.n, args.q)
    else:
        counts = smallgrp.lemma_so_triple_count(args.m, args.q, cap=args.cap)
        what = "SO%d(%d)" % (2 * args.m, args.q)
    for key in sorted(k for k in counts if k != "total"):
        print("%s = %d" % (key, counts[key]))
    total = counts["total"]
    print("total = %d" % total)
    print("verdict = %s" % ("no-such-triples" if total == 0 else "TRIPLES EXIST"))
    return 0 if total == 0 else 1


_DISPATCH = {
    "validate": cmd_validate,
    "structconst": cmd_structconst,
    "rigid": cmd_rigid,
    "dixon": cmd_dixon,
    "dl": cmd_dl,
    "dualsym": cmd_dualsym,
    "regunip": cmd_regunip,
    "lemma": cmd_lemma,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse uses 2 for usage errors and 0 for --help
        return int(exc.code or 0)
    try:
        return _DISPATCH[args.command](args)
    except (OSError, ValueError, KeyError, chartable.CTBSyntaxError,
            regunip.DescriptorError, smallgrp.GroupTooLargeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
