"""Command-line front end.

All H coordinates are in units of pi: ``--H "1/7,2/7,-3/7"`` means
H = pi * (1/7, 2/7, -3/7).  Output is JSON with sorted keys and exact
fractions written as "p/q"; ``--format table`` prints a plain-text view.
Exit codes: 0 success, 1 domain error, 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Sequence

from . import flags, triads
from .errors import DomainError
from .exact import ExactVector, format_fraction
from .rootsys import build_root_system

PAIRS = sorted(flags.CATALOGUE)


def _vec(v: ExactVector) -> list[str]:
    return v.to_strings()


def _parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="realflags",
        description=(
            "Intersections of real flag manifolds via symmetric triads. "
            "H is always given in units of pi, as comma separated rationals "
            "(e.g. --H 1/7,2/7,-3/7 means H = pi*(1/7,2/7,-3/7))."
        ),
    )
    sub = ap.add_subparsers(dest="verb", required=True, metavar="verb")

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")

    source = argparse.ArgumentParser(add_help=False)
    source.add_argument("--pair", choices=PAIRS, help="builtin pair")
    source.add_argument("--n", type=int, default=3, help="size parameter of the pair (default 3)")
    source.add_argument("--triad-file", type=Path, help="triad in the JSON exchange format")

    point = argparse.ArgumentParser(add_help=False)
    point.add_argument("--H", required=True, help="point of a in units of pi, e.g. 1/7,2/7,-3/7")

    p = sub.add_parser("roots", parents=[common], help="build a root system")
    p.add_argument("--family", required=True)
    p.add_argument("--rank", type=int, required=True)
    p.add_argument("--weyl-order", action="store_true", help="also compute |W| by orbit enumeration")

    p = sub.add_parser("triad", parents=[common, source], help="check the six axioms")
    p.add_argument("--emit", action="store_true", help="print the triad in the exchange format")

    sub.add_parser("regular", parents=[common, source, point], help="decide regularity of H")
    sub.add_parser("cell", parents=[common, source], help="alpha~, m_i and H_i of the fundamental cell")
    sub.add_parser("gamma", parents=[common, source, point], help="membership of H in the lattice Gamma")

    p = sub.add_parser("st-point", parents=[common, source], help="regular H0 with order*H0 in Gamma")
    p.add_argument("--order", type=int, required=True, help="the integer n > sum m_i")

    p = sub.add_parser("intersect", parents=[common, source, point], help="L0 n Ad(exp H) L1")
    p.add_argument("--x0", help="base point in a (default: the catalogue default)")
    p.add_argument("--family", help="congruent case: restricted root system family")
    p.add_argument("--rank", type=int)

    p = sub.add_parser("antipodal", parents=[common, source], help="maximal antipodal set W(Delta)x0")
    p.add_argument("--x0", help="base point (chart of a for --pair, torus coordinates for --family)")
    p.add_argument("--family")
    p.add_argument("--rank", type=int)

    p = sub.add_parser("tight", parents=[common, source], help="intersection count and SB(L;Z2)")
    p.add_argument("--x0")

    p = sub.add_parser("oracle", parents=[common], help="numerical certification in su(m)")
    p.add_argument("--pair", choices=PAIRS + ["su-n-so-congruent"], required=True)
    p.add_argument("--n", type=int, default=3)
    p.add_argument(
        "--check",
        choices=("involutions", "extraction", "dimensions", "rotations", "regularity", "commutative", "all"),
        default="all",
    )
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=200, help="points for --check dimensions")
    p.add_argument("--H", help="point for rotations/commutative checks (units of pi)")
    p.add_argument("--order", type=int, help="n for --check regularity (default sum m_i + 1)")
    return ap


def _triad(args) -> tuple[triads.SymmetricTriad, flags.PairCatalogueEntry | None]:
    if args.triad_file is not None:
        if args.pair:
            raise DomainError("give either --pair or --triad-file, not both")
        try:
            text = args.triad_file.read_text()
        except OSError as exc:
            raise DomainError(f"cannot read {args.triad_file}: {exc.strerror}") from None
        return triads.loads_triad(text), None
    if not args.pair:
        raise DomainError("one of --pair or --triad-file is required")
    entry = flags.catalogue_entry(args.pair, args.n)
    return entry.triad, entry


def _x0(args, triad, entry) -> flags.BasePoint:
    if args.x0:
        bp = flags.BasePoint.parse(args.x0)
        return entry.validate_x0(bp) if entry else bp
    if entry is None:
        raise DomainError("--x0 is required with --triad-file")
    return entry.default_x0


def _h(args) -> triads.PiPoint:
    return triads.PiPoint.parse(args.H)


# --------------------------------------------------------------------------


def cmd_roots(args) -> dict:
    R = build_root_system(args.family, args.rank)
    out = {
        "count": len(R.roots),
        "label": R.label,
        "positive": [_vec(r) for r in R.positive],
        "roots": [_vec(r) for r in R.roots],
        "simple": [_vec(r) for r in R.simple],
    }
    if args.weyl_order:
        out["weyl_order"] = R.weyl_order()
    return out


def cmd_triad(args) -> dict:
    triad, _ = _triad(args)
    if args.emit:
        return triads.triad_to_dict(triad)
    parts = [c for _, c in triad.components] if triad.is_direct_sum else [triad]
    return {
        "name": triad.name,
        "reports": [{"component": c.name, **triads.check_axioms(c).to_dict()} for c in parts],
        "passed": all(triads.check_axioms(c).passed for c in parts),
    }


def cmd_regular(args) -> dict:
    triad, _ = _triad(args)
    res = triads.is_regular(triad, _h(args))
    return {
        "H_over_pi": _h(args).q.to_strings(),
        "regular": res.regular,
        "violations": [
            {"kind": v.kind, "pairing": format_fraction(v.value), "root": _vec(v.root), "reason": v.describe()}
            for v in res.violations
        ],
        "witness": None if res.regular else _vec(res.violations[0].root),
    }


def cmd_cell(args) -> dict:
    triad, _ = _triad(args)
    triads.require_triad(triad)
    cell = triads.fundamental_cell(triad)
    return {**cell.to_dict(), "sum_m": cell.total}


def cmd_gamma(args) -> dict:
    triad, _ = _triad(args)
    H = _h(args)
    full, reduced = triads.gamma_contains(triad, H), triads.gamma_contains_reduced(triad, H)
    return {"H_over_pi": H.q.to_strings(), "in_gamma": full, "in_gamma_reduced_test": reduced}


def cmd_st_point(args) -> dict:
    triad, _ = _triad(args)
    triads.require_triad(triad)
    H0 = triads.st_point(triad, args.order)
    return {
        "H0_over_pi": H0.q.to_strings(),
        "n": args.order,
        "regular": triads.is_regular(triad, H0).regular,
        "n_H0_in_gamma": triads.gamma_contains(triad, H0 * args.order),
    }


def cmd_intersect(args) -> dict:
    H = _h(args)
    if args.family:
        if args.rank is None or not args.x0:
            raise DomainError("the congruent case needs --family, --rank and --x0")
        R = build_root_system(args.family, args.rank)
        res = flags.congruent_intersection(R, flags.BasePoint.parse(args.x0), H)
        return {"case": "congruent", "root_system": R.label, **res.to_dict()}
    triad, entry = _triad(args)
    x0 = _x0(args, triad, entry)
    res = flags.noncongruent_intersection(triad, x0, H, entry)
    out = {"case": "non-congruent", "triad": triad.name, "x0": x0.vector.to_strings(), **res.to_dict()}
    if entry is not None and res.discrete:
        out["equality_chain"] = {"W(Delta)x0 n a": [_vec(p) for p in res.chain], "holds": set(res.chain) == set(res.points)}
    return out


def cmd_antipodal(args) -> dict:
    if args.family:
        if args.rank is None or not args.x0:
            raise DomainError("--family needs --rank and --x0")
        delta = build_root_system(args.family, args.rank)
        x0 = flags.BasePoint.parse(args.x0).vector
    else:
        triad, entry = _triad(args)
        if entry is None:
            raise DomainError("antipodal sets need --pair or --family")
        x0 = entry.to_torus(_x0(args, triad, entry).vector)
        delta = entry.delta
    pts = flags.maximal_antipodal(delta, x0)
    return {"cardinality": len(pts), "delta": delta.label, "points": [_vec(p) for p in pts], "x0": _vec(x0)}


def cmd_tight(args) -> dict:
    triad, entry = _triad(args)
    x0 = _x0(args, triad, entry)
    count, ref = flags.tightness_count(triad, x0, entry)
    return {"count": count, "sb_reference": "unavailable" if ref is None else ref, "x0": x0.vector.to_strings()}


def cmd_oracle(args):
    from .oracle import pairs as op
    from .oracle import verify as ov

    pair = op.build_pair(args.pair, args.n)
    reports = []
    want = args.check
    if want in ("involutions", "all"):
        reports.append(ov.verify_involutions(pair))
    if want in ("extraction", "all"):
        reports.append(ov.verify_extraction(pair))
    if want in ("dimensions", "all"):
        reports.append(ov.verify_dimension_grid(pair, args.count, args.seed))
    H = triads.PiPoint.parse(args.H) if args.H else flags.generic_regular_points(
        pair.restricted if pair.congruent else pair.triad, 1
    )[0]
    if want in ("rotations", "all"):
        reports.append(ov.verify_all_rotations(pair, H))
    if not pair.congruent:
        if want in ("regularity", "all") and pair.entry.is_triad:
            order = args.order or triads.fundamental_cell(pair.triad).total + 1
            reports.append(ov.verify_lemma_regularity(pair, order))
        if want in ("commutative", "all"):
            entry = pair.entry
            res = flags.noncongruent_intersection(pair.triad, entry.default_x0, H) if entry.is_triad else None
            if res is not None and res.discrete:
                reports.append(ov.verify_commutative_lemma(pair, res.points, H, entry.default_x0))
    elif want in ("regularity", "commutative"):
        raise DomainError(f"--check {want} needs a non-congruent pair")
    return reports


COMMANDS = {
    "roots": cmd_roots,
    "triad": cmd_triad,
    "regular": cmd_regular,
    "cell": cmd_cell,
    "gamma": cmd_gamma,
    "st-point": cmd_st_point,
    "intersect": cmd_intersect,
    "antipodal": cmd_antipodal,
    "tight": cmd_tight,
    "oracle": cmd_oracle,
}


def _table(data, indent: int = 0) -> str:
    pad = " " * indent
    lines = []
    if isinstance(data, dict):
        for k in sorted(data):
            v = data[k]
            if isinstance(v, (dict, list)) and v and not _flat(v):
                lines.append(f"{pad}{k}:")
                lines.append(_table(v, indent + 2))
            else:
                lines.append(f"{pad}{k}: {_cell(v)}")
    elif isinstance(data, list):
        for v in data:
            if isinstance(v, (dict, list)) and not _flat(v):
                lines.append(f"{pad}-")
                lines.append(_table(v, indent + 2))
            else:
                lines.append(f"{pad}- {_cell(v)}")
    else:
        lines.append(pad + _cell(data))
    return "\n".join(lines)


def _flat(v) -> bool:
    return isinstance(v, list) and all(not isinstance(x, (dict, list)) for x in v)


def _cell(v) -> str:
    if isinstance(v, list):
        return "(" + ", ".join(str(x) for x in v) + ")"
    if v is None:
        return "-"
    return str(v)


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = _parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = COMMANDS[args.verb](args)
    except DomainError as exc:
        print(f"error: {exc}", file=stderr)
        return 1
    if args.verb == "oracle":
        if args.format == "table":
            print("\n\n".join(r.to_table() for r in result), file=stdout)
        else:
            doc = {"passed": all(r.passed for r in result), "reports": [r.to_dict() for r in result]}
            print(json.dumps(doc, indent=2, sort_keys=True), file=stdout)
        return 0 if all(r.passed for r in result) else 1
    if args.format == "table":
        print(_table(result), file=stdout)
    else:
        print(json.dumps(result, indent=2, sort_keys=True), file=stdout)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
