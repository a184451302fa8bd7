"""Command line surface: types, gramgross, verify, cm, oracle.

Exit codes: 0 success, 1 verification failure, 2 usage or precondition
error.  All JSON output carries a top-level "schema": 1 and is emitted with
sorted keys so identical inputs give identical bytes.  Integers that could
exceed 2^63 are serialized as decimal strings.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys

from . import classify as cl
from .cm import (
    D1_20_LABEL,
    EXTENDED_DS,
    closed_form_gram,
    cm_row,
    cm_rows,
    locate_embedding_type,
    recompute_ne,
    supersingular_primes,
)
from .exact import is_prime
from .gramgross import PreconditionError, gram_gross
from .oracle import supersingular_j_set
from .orders import enumerate_types
from .verify import ORACLE_CAP, run_verify

BIG = 2 ** 63


def _jint(n: int):
    return n if abs(n) < BIG else str(n)


def _jmat(gram):
    return [[_jint(x) for x in row] for row in gram]


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ": "), indent=1)


def _type_payload(p: int, ell: int, disc_bound: int):
    types = enumerate_types(p, ell)
    out = []
    for idx, rec in enumerate(types):
        c = cl.classify_type(p, rec.lattice, rec.minima, rec.gram)
        out.append(
            {
                "index": idx,
                "minima": [_jint(d) for d in rec.minima],
                "gram": _jmat(rec.gram),
                "spine": c.spine,
                "special_j": c.special_j,
                "embedding": c.embedding,
                "orthogonal": c.orthogonal,
                "well_rounded": c.well_rounded,
                "embedded_discriminants": [
                    _jint(d)
                    for d in cl.embedded_discriminants(rec.lattice, disc_bound)
                ],
            }
        )
    return {"schema": 1, "p": _jint(p), "ell": ell, "types": out}


CSV_COLUMNS = [
    "p", "type_index", "D1", "D2", "D3", "x", "y", "z",
    "spine", "special_j", "embedding",
]


def _types_csv(payload) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for t in payload["types"]:
        g = t["gram"]
        w.writerow(
            [
                payload["p"], t["index"],
                g[0][0], g[1][1], g[2][2], g[0][1], g[0][2], g[1][2],
                t["spine"], t["special_j"], t["embedding"],
            ]
        )
    return buf.getvalue()


def cmd_types(args) -> int:
    p = args.p
    if not is_prime(p):
        print(f"error: p = {p} is not prime", file=sys.stderr)
        return 2
    ell = args.ell if args.ell else (3 if p == 2 else 2)
    if ell == p or not is_prime(ell):
        print(f"error: ell = {ell} must be a prime different from p", file=sys.stderr)
        return 2
    disc_bound = args.disc_bound if args.disc_bound else max(3, 2 * p)
    payload = _type_payload(p, ell, disc_bound)
    if args.csv:
        sys.stdout.write(_types_csv(payload))
    else:
        print(_dump(payload))
    return 0


def cmd_gramgross(args) -> int:
    try:
        cands = gram_gross(args.p, args.d1)
    except PreconditionError as e:
        print(f"error: REQUIRE violated: {e}", file=sys.stderr)
        return 2
    payload = {
        "schema": 1,
        "p": _jint(args.p),
        "d1": _jint(args.d1),
        "matrices": [_jmat(c.gram) for c in cands],
        "provenance": [
            {"x": _jint(c.x), "d2": _jint(c.d2), "y": _jint(c.y),
             "d3": _jint(c.d3), "n": _jint(c.n), "z": _jint(c.z)}
            for c in cands
        ],
    }
    print(_dump(payload))
    return 0


def cmd_verify(args) -> int:
    if args.pmin < 2 or args.pmax < args.pmin:
        print("error: need 2 <= pmin <= pmax", file=sys.stderr)
        return 2

    lines = []

    def progress(rep):
        bad = rep.failures
        status = "FAIL " + ",".join(bad) if bad else "ok"
        lines.append(f"p={rep.p}: {len(rep.rules)} rules, {status}")

    report = run_verify(
        args.pmin, args.pmax, extended_cm=args.extended_cm,
        oracle_cap=args.oracle_cap, progress=progress,
    )
    summary = sys.stderr if args.json else sys.stdout
    for line in lines:
        print(line, file=summary)
    mult = report.gramgross_multiplicities()
    many = {k: v for k, v in mult.items() if v > 1}
    if many:
        print(f"gramgross multiplicity > 1 at (p, D1): {sorted(many)}", file=summary)
    nea = report.n_equals_a_fraction()
    if nea:
        print(f"n == a in {nea[0]}/{nea[1]} spine GramGross hits", file=summary)
    for label, (got, want) in sorted(report.cm_results.items()):
        print(f"N_E[{label}] recomputed {got}, table {want}", file=summary)
    nfail = len(report.failures)
    print(f"{'PASS' if report.ok else 'FAIL'}: {len(report.primes)} primes, "
          f"{nfail} failing checks", file=summary)
    if args.json:
        print(_dump(report.to_json_dict()))
    return 0 if report.ok else 1


def cmd_cm(args) -> int:
    if args.row:
        try:
            rows = [cm_row(args.row)]
        except KeyError:
            print(f"error: unknown CM row {args.row!r}", file=sys.stderr)
            return 2
    else:
        rows = [r for r in cm_rows() if args.extended or r.d not in EXTENDED_DS]
    all_ok = True
    csv_buf = io.StringIO()
    w = csv.writer(csv_buf, lineterminator="\n")
    w.writerow(["j_label", "p", "D1", "D2", "D3", "matches_closed_form"])
    summary = {}
    for row in rows:
        p_max = args.pmax if args.pmax else (row.d + 1) ** 2 // 4 + row.d
        if 4 * p_max < (row.d + 1) ** 2:
            print(
                f"error: pmax {p_max} below (d+1)^2/4 for d = {row.d}",
                file=sys.stderr,
            )
            return 2
        n_e, detail = recompute_ne(row, p_max)
        for p, minima, _good in detail:
            rec = locate_embedding_type(p, row.d)
            closed = _closed_form_or_none(row.j_label, p)
            matches = "" if closed is None else str(rec.gram == closed)
            w.writerow([row.j_label, p, minima[0], minima[1], minima[2], matches])
        summary[row.j_label] = {"recomputed": n_e, "table": row.n_e}
        if n_e != row.n_e:
            all_ok = False
    if args.json:
        print(_dump({"schema": 1, "rows": summary}))
    else:
        sys.stdout.write(csv_buf.getvalue())
        for label, v in sorted(summary.items()):
            print(
                f"N_E[{label}] recomputed {v['recomputed']}, table {v['table']}",
                file=sys.stderr,
            )
    return 0 if all_ok else 1


def _closed_form_or_none(label: str, p: int):
    try:
        return closed_form_gram(label, p)
    except (KeyError, ValueError):
        return None


def cmd_oracle(args) -> int:
    p = args.p
    if not is_prime(p):
        print(f"error: p = {p} is not prime", file=sys.stderr)
        return 2
    ss = supersingular_j_set(p)
    payload = {
        "schema": 1,
        "p": _jint(p),
        "count": ss.count,
        "spine_count": ss.spine_count,
        "orbit_count": ss.orbit_count,
        "nonresidue": _jint(ss.nonresidue),
        "j_list": [
            {"re": _jint(re), "im": _jint(im), "in_fp": im == 0}
            for re, im in ss.js
        ],
    }
    print(_dump(payload))
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="grosslat",
        description="Exact Gross-lattice toolkit for quaternion maximal orders",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    t = sub.add_parser("types", help="enumerate and classify the types of B_p")
    t.add_argument("--p", type=int, required=True)
    t.add_argument("--ell", type=int, default=0, help="neighbor prime (default 2)")
    t.add_argument("--disc-bound", type=int, default=0,
                   help="embedded discriminant bound (default 2p)")
    t.add_argument("--csv", action="store_true")
    t.add_argument("--json", action="store_true", help="JSON output (default)")
    t.set_defaults(func=cmd_types)

    g = sub.add_parser("gramgross", help="candidate Gram matrices for (p, D1)")
    g.add_argument("--p", type=int, required=True)
    g.add_argument("--d1", type=int, required=True)
    g.set_defaults(func=cmd_gramgross)

    v = sub.add_parser("verify", help="run the invariant suite over a prime range")
    v.add_argument("--pmin", type=int, default=2)
    v.add_argument("--pmax", type=int, default=300)
    v.add_argument("--extended-cm", action="store_true",
                   help="also recompute N_E for d in {43, 67, 163}")
    v.add_argument("--oracle-cap", type=int, default=ORACLE_CAP)
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("cm", help="CM rows: closed forms and N_E recomputation")
    grp = c.add_mutually_exclusive_group(required=True)
    grp.add_argument("--row", type=str, help='label, e.g. "-15^3" or "0"')
    grp.add_argument("--all", action="store_true")
    c.add_argument("--pmax", type=int, default=0)
    c.add_argument("--extended", action="store_true",
                   help="include d in {43, 67, 163} under --all")
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_cm)

    o = sub.add_parser("oracle", help="finite-field supersingular j-invariants")
    o.add_argument("--p", type=int, required=True)
    o.set_defaults(func=cmd_oracle)
    return ap


def _fuse_row_flag(argv):
    """Join `--row -15^3` into `--row=-15^3` so labels may start with '-'."""
    out = []
    it = iter(argv)
    for tok in it:
        if tok == "--row":
            val = next(it, None)
            if val is None:
                out.append(tok)
            else:
                out.append(f"--row={val}")
        else:
            out.append(tok)
    return out


def main(argv=None) -> int:
    if argv is None:
        argv = sys.argv[1:]
    args = build_parser().parse_args(_fuse_row_flag(argv))
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
