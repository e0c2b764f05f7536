"""Command line front end.

Exit status is 0 when every check passes, 1 when a check fails and 2 on
unreadable input or bad usage.
"""

from __future__ import annotations

import argparse
import sys
from typing import Sequence

from duncehat import construct as cons
from duncehat import delta, obstruction
from duncehat.io import EXAMPLES, ParseError, example_text, load_complex, load_construct
from duncehat.report import Report


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        if path == "-":
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except UnicodeDecodeError as exc:
        raise UsageError(f"{path}: not UTF-8 ({exc.reason})") from None


def _triple(t) -> str:
    return "(" + ",".join(str(x) for x in t) + ")"


def _step(p: delta.FreePair) -> str:
    return f"{p.face} in {p.cofacet} {_triple(p.dims)}"


def cmd_dcx_check(path: str, budget: int = delta.DEFAULT_BUDGET) -> Report:
    cx = load_complex(_read(path))
    rep = Report(f"complex {path}")
    v = delta.validate(cx)
    rep.add("validation", "PASS" if v.ok else "FAIL", *(v.violations or ("ok",)))
    if not v.ok:
        return rep
    V, E, T = cx.counts
    rep.add("euler characteristic", "INFO", f"V={V} E={E} T={T}", f"chi = {delta.euler_characteristic(cx)}")
    rep.add("betti numbers", "INFO", _triple(delta.betti_numbers(cx)))
    free = delta.free_faces(cx)
    rep.add("free faces", "INFO", f"count = {len(free)}", *(_step(p) for p in free))
    if not delta.is_connected(cx):
        rep.add("collapsibility", "INFO", "not connected; decided per component")
        return rep
    verdict = delta.collapse_search(cx, budget)
    if isinstance(verdict, delta.Collapsible):
        end = delta.replay(cx, verdict.certificate)
        lines = [f"Collapsible: certificate of length {len(verdict.certificate)}"]
        lines += [f"{i + 1}. {_step(p)}" for i, p in enumerate(verdict.certificate)]
        lines.append(f"replay ends at {end.vertices[0]}")
    elif isinstance(verdict, delta.NotCollapsible):
        lines = [f"NotCollapsible: {verdict.reason}", f"states explored = {verdict.explored}"]
    else:
        lines = [f"Unknown: budget {verdict.explored} exhausted"]
    rep.add("collapsibility", "INFO", *lines)
    return rep


def _ok(flag: bool) -> str:
    return "PASS" if flag else "FAIL"


def cmd_construct_report(path: str, diagonal: cons.Diagonal = "embedded") -> Report:
    X = load_construct(_read(path))
    rep = Report(f"construct {path}")
    v = cons.validate(X)
    rep.add("validation", _ok(v.ok), *(v.violations or ("ok",)))
    if not v.ok:
        return rep

    dcx = cons.dual_complex(X)
    V, E, T = dcx.counts
    betti = delta.betti_numbers(dcx)
    rep.add("dual complex", "INFO", f"V={V} E={E} T={T}", f"chi = {delta.euler_characteristic(dcx)}")
    h = cons.structure_sheaf_cohomology(X)
    rep.add("structure sheaf cohomology", _ok(h == betti),
            f"h^i(O_X) = {_triple(h)}", f"betti(dual complex) = {_triple(betti)}")

    edges = cons.triple_point_check(X)
    rep.add("triple point formula", _ok(all(e.ok for e in edges)), *(
        f"C{e.gluing}: ({e.degrees[0]}) + ({e.degrees[1]}) + {e.triple_points} = {e.total}" for e in edges
    ))
    verts = cons.combinatorial_check(X, diagonal)
    rep.add(f"inertia ({diagonal})", _ok(all(c.ok for c in verts)), *(
        f"X{c.component}: matrix {[list(r) for r in c.matrix]}, positive index {c.inertia}" for c in verts
    ))
    glue = cons.gluing_unobstructed_check(X)
    rep.add("gluing unobstructed", _ok(all(g.ok for g in glue)), *(
        f"C{g.gluing}: {g.triple_points} triple points, deg T_C(-sum) = {g.degree}" for g in glue
    ))

    planar = all(c.lattice.blowups is not None for c in X.components)
    if not planar:
        rep.add("invariants", "INFO", "needs plane blow-up components; skipped")
        return rep
    rep.add("smoothing euler", "INFO", f"chi = {cons.smoothing_euler(X)}")
    try:
        rep.add("h11", "INFO", f"h11 = {cons.h11(X)}", "assumes b1 = 0 for the smoothing")
    except cons.NotPointLikeError as exc:
        rep.add("h11", "INFO", f"not computed: {exc}")
    rep.add("expected dimensions", "INFO",
            f"moduli = {cons.expected_moduli_dim(X)}",
            f"dim M_O = {cons.singular_locus_genus(X)}",
            f"d-semistable = {cons.dsemistable_expected_dim(X)}")
    return rep


def _arc(t) -> str:
    return "(" + ",".join(str(x) for x in t) + ")"


def obstruction_rows() -> list[str]:
    Z = obstruction.z_quadric()
    rows = []
    for cid in obstruction.CASE_ORDER:
        case = obstruction.CASES[cid]
        if case.arc is None:
            rows.append(f"{cid}\t-\tno degeneration\t-\t-")
            continue
        arc = obstruction.compose_valuation(case)
        st = obstruction.limit_stratum(arc)
        rows.append("\t".join((cid, _arc(arc.orders), str(st),
                               str(obstruction.t_order(arc)), str(obstruction.z_order(arc, Z)))))
    return rows


def cmd_obstruction_cases() -> Report:
    Z = obstruction.z_quadric()
    rep = Report("obstruction cases")
    rep.add("quadric Z", "INFO", "lambda*ab + mu*bc + nu*ca with (lambda, mu, nu) = " + _arc(Z.normalized()))
    consistent = all(
        obstruction.compose_valuation(c).orders == c.arc
        for c in obstruction.CASES.values() if c.arc is not None
    )
    rep.add("cases", _ok(consistent), "case\tarc\tstratum\tt_order\tz_order", *obstruction_rows())
    v = obstruction.bezout_argument(4, 9, 2, 3)
    rep.add("bezout", _ok(v.contradiction), *v.trace)
    return rep


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="duncehat", description="Checks for normal crossing constructs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True)

    dcx = sub.add_parser("dcx", help="2-complex tools").add_subparsers(dest="action", required=True)
    check = dcx.add_parser("check", parents=[common], help="validate a complex and decide collapsibility")
    check.add_argument("path", help="complex JSON file, or - for stdin")
    check.add_argument("--budget", type=int, default=delta.DEFAULT_BUDGET)

    con = sub.add_parser("construct", help="construct tools").add_subparsers(dest="action", required=True)
    rpt = con.add_parser("report", parents=[common], help="run the numeric checks on a construct")
    rpt.add_argument("path", help="construct JSON file, or - for stdin")
    rpt.add_argument("--diagonal", choices=("embedded", "normalized"), default="embedded")

    obs = sub.add_parser("obstruction", help="degeneration case table").add_subparsers(dest="action", required=True)
    obs.add_parser("cases", parents=[common], help="print the case table and the intersection count")

    ex = sub.add_parser("examples", help="print a shipped example file")
    ex.add_argument("name")
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 0 if exc.code == 0 else 2
    fmt = getattr(args, "format", "text")
    try:
        if args.command == "examples":
            try:
                sys.stdout.write(example_text(args.name))
            except KeyError:
                print(f"unknown example {args.name!r}; valid names: {', '.join(EXAMPLES)}", file=sys.stderr)
                return 2
            return 0
        if args.command == "dcx":
            if args.budget < 1:
                raise UsageError("--budget must be positive")
            rep = cmd_dcx_check(args.path, args.budget)
        elif args.command == "construct":
            rep = cmd_construct_report(args.path, args.diagonal)
        else:
            rep = cmd_obstruction_cases()
    except (UsageError, ParseError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    sys.stdout.write(rep.render(fmt))
    return 0 if rep.ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
