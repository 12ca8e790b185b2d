"""Command line front end (``ghc``).

Exit codes: 0 success, 1 a checked property failed, 2 bad input,
3 form not positive definite, 4 certified search beyond its size limit.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .bounds import (
    base_change_bound,
    check_berge_martinet,
    check_duality,
    check_minkowski,
    mordell_for_form,
    mordell_over_catalog,
)
from .catalog import lookup, self_test
from .enumeration import CertifiedLimitError, kz_basis, minimum
from .forms import FormError, GramForm, NotPositiveDefiniteError
from .partitions import Partition, complement
from .voronoi import gradient_norm_sq, voronoi_report

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_NOT_PD, EXIT_LIMIT = 0, 1, 2, 3, 4


@dataclass
class RunConfig:
    partition: Partition | None
    source: str
    gram: GramForm
    certified: bool
    as_json: bool
    threads: int


def fmt_float(x) -> str:
    return f"{float(x):.12g}"


def _emit(cfg_json: bool, data: dict, lines: Sequence[str]):
    if cfg_json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        print("\n".join(lines))


def _parse_partition(text: str, columns: bool) -> Partition:
    lam = Partition.parse(text)
    return lam.conjugate() if columns else lam


def _config(args, need_partition: bool = True) -> RunConfig:
    if getattr(args, "lattice", None):
        gram = lookup(args.lattice).gram
        source = args.lattice
    elif getattr(args, "gram", None):
        gram = GramForm.from_file(args.gram)
        source = args.gram
    else:
        raise FormError("give --lattice NAME or --gram FILE")
    lam = None
    if need_partition:
        if not args.partition:
            raise FormError("--partition is required")
        lam = _parse_partition(args.partition, args.columns)
        lam.check_fits(gram.n)
    return RunConfig(lam, source, gram, not args.heuristic, args.json, args.threads)


def _flag_json(f) -> list[list[int]]:
    return [list(c) for c in f.columns]


def _invariant_json(inv) -> dict:
    val = inv.value
    q, r = val.rational_power()
    return {"exact": str(r) if q == 1 else None, "power": q, "power_value": str(r), "float": fmt_float(val)}


def cmd_invariant(args, witnesses_only: bool = False) -> int:
    cfg = _config(args)
    res = minimum(cfg.gram, cfg.partition, certified=cfg.certified, threads=cfg.threads)
    inv = res.invariant(cfg.gram)
    data = {
        "lattice": cfg.source,
        "partition": list(cfg.partition.parts),
        "columns": list(cfg.partition.columns),
        "n": cfg.gram.n,
        "minimum": str(res.minimum),
        "det": str(cfg.gram.det()),
        "invariant": _invariant_json(inv),
        "certified": res.certified,
        "witness_count": len(res.witnesses),
        "witnesses": [_flag_json(f) for f in res.witnesses],
        "search_bounds": {str(d): str(b) for d, b in sorted(res.bounds.items())},
    }
    lines = [
        f"lattice     {cfg.source} (n={cfg.gram.n}, det {cfg.gram.det()})",
        f"partition   {cfg.partition} (columns {','.join(map(str, cfg.partition.columns))})",
        f"minimum     {res.minimum}",
        f"invariant   {inv.describe()}  ~ {fmt_float(inv)}",
        f"certified   {'yes' if res.certified else 'no (heuristic)'}",
        f"witnesses   {len(res.witnesses)}",
    ]
    shown = res.witnesses if witnesses_only else res.witnesses[:5]
    for f in shown:
        lines.append("  " + " ".join("(" + ",".join(map(str, c)) + ")" for c in f.columns))
    if not witnesses_only and len(res.witnesses) > len(shown):
        lines.append(f"  ... {len(res.witnesses) - len(shown)} more (use `minima` to list all)")
    _emit(cfg.as_json, data, lines)
    return EXIT_OK


def cmd_minima(args) -> int:
    return cmd_invariant(args, witnesses_only=True)


def cmd_check(args) -> int:
    cfg = _config(args)
    rep = voronoi_report(cfg.gram, cfg.partition, certified=cfg.certified)
    want_all = not (args.perfect or args.eutactic or args.extreme)
    norms = sorted({gradient_norm_sq(cfg.gram, f) for f in rep.minimal_set.flags})
    data = {
        "lattice": cfg.source,
        "partition": list(cfg.partition.parts),
        "minimum": str(rep.minimal_set.minimum),
        "minimal_flags": [_flag_json(f) for f in rep.minimal_set.flags],
        "gradient_norm_sq": [str(x) for x in norms],
    }
    lines = [
        f"lattice     {cfg.source}, partition {cfg.partition}",
        f"minimum     {rep.minimal_set.minimum} on {len(rep.minimal_set)} minimal flags",
        f"|grad|^2    {', '.join(map(str, norms))}",
    ]
    verdicts = []
    if want_all or args.perfect or args.extreme:
        p = rep.perfection
        data["perfect"] = {"value": p.perfect, "rank": p.rank, "required": p.required}
        lines.append(f"perfect     {'yes' if p.perfect else 'no'} (rank {p.rank}/{p.required})")
        verdicts.append(p.perfect)
    if want_all or args.eutactic or args.extreme:
        e = rep.eutaxy
        data["eutactic"] = {
            "value": e.eutactic,
            "epsilon": str(e.epsilon),
            "boundary": e.boundary,
            "rho": [str(x) for x in e.rho] if e.rho is not None else None,
        }
        cert = "" if e.rho is None else " rho = (" + ", ".join(map(str, e.rho)) + ")"
        lines.append(f"eutactic    {'yes' if e.eutactic else 'no'} (eps {e.epsilon}){cert}")
        verdicts.append(e.eutactic)
    if want_all or args.extreme:
        data["extreme"] = rep.extreme
        lines.append(f"extreme     {'yes' if rep.extreme else 'no'}")
    _emit(cfg.as_json, data, lines)
    return EXIT_OK


def cmd_profile(args) -> int:
    cfg = _config(args, need_partition=False)
    prof, basis = kz_basis(cfg.gram)
    data = {
        "lattice": cfg.source,
        "profile": [str(x) for x in prof],
        "basis": [list(b) for b in basis],
        "ratio_first_last": str(prof[0] / prof[-1]),
        "method": "greedy",
    }
    lines = [
        f"lattice     {cfg.source} (greedy KZ profile)",
        "profile     " + ", ".join(map(str, prof)),
        f"A1/An       {prof[0] / prof[-1]}",
    ]
    _emit(cfg.as_json, data, lines)
    return EXIT_OK


def _report_out(args, rep) -> int:
    data = rep.to_json()
    lines = [
        f"{rep.name}: {'holds' if rep.holds else 'FAILS'}",
        f"  lhs   {rep.lhs}  ~ {fmt_float(rep.lhs_float)}",
        f"  rhs   {rep.rhs}  ~ {fmt_float(rep.rhs_float)}",
        f"  slack {fmt_float(rep.slack)}",
    ]
    lines += [f"  {d}" for d in rep.details]
    _emit(args.json, data, lines)
    return EXIT_OK if rep.holds else EXIT_FAIL


def cmd_bounds(args) -> int:
    kind = args.kind
    if kind == "base-change":
        val = base_change_bound(Fraction(args.gamma), args.degree, args.disc, args.weight)
        data = {"bound": val.describe("x"), "float": fmt_float(val)}
        _emit(args.json, data, [f"base-change bound  {val.describe('x')}  ~ {fmt_float(val)}"])
        return EXIT_OK
    if kind == "duality":
        if args.n is None:
            raise FormError("duality needs --n")
        lam = _parse_partition(args.partition, args.columns)
        return _report_out(args, check_duality(lam, args.n))
    if kind == "mordell":
        if args.m is None:
            raise FormError("mordell needs --m")
        lam = _parse_partition(args.partition, args.columns)
        if args.lattice or args.gram:
            cfg = _config(args)
            return _report_out(args, mordell_for_form(cfg.gram, args.m, lam))
        if args.n is None:
            raise FormError("mordell needs --n or a lattice")
        return _report_out(args, mordell_over_catalog(args.n, args.m, lam))
    if kind == "minkowski":
        cfg = _config(args)
        res = minimum(cfg.gram, cfg.partition, certified=cfg.certified, threads=cfg.threads)
        return _report_out(args, check_minkowski(res.invariant(cfg.gram), cfg.gram.n, cfg.partition))
    if kind == "berge-martinet":
        cfg = _config(args, need_partition=False)
        return _report_out(args, check_berge_martinet(cfg.gram))
    raise FormError(f"unknown bound {kind}")


def cmd_partition(args) -> int:
    lam = _parse_partition(args.partition, args.columns)
    if args.op == "conjugate":
        out = lam.conjugate()
    else:
        if args.n is None:
            raise FormError("complement needs --n")
        out = complement(lam, args.n)
    if args.json:
        print(json.dumps({"partition": list(out.parts)}))
    else:
        print(out)
    return EXIT_OK


def cmd_self_test(as_json: bool) -> int:
    results = self_test()
    ok = all(r[1] for r in results)
    data = {"ok": ok, "entries": [{"name": n, "ok": good, "detail": d} for n, good, d in results]}
    lines = [f"{'ok  ' if good else 'FAIL'} {n}: {d}" for n, good, d in results]
    _emit(as_json, data, lines)
    return EXIT_OK if ok else EXIT_FAIL


def _add_common(p: argparse.ArgumentParser, partition: bool = True, lattice: bool = True):
    if lattice:
        src = p.add_mutually_exclusive_group()
        src.add_argument("--lattice", help="catalog name: Zn, An, An*, Dn, Dn*, E8")
        src.add_argument("--gram", help="Gram file: n on the first line, then n rows")
    if partition:
        p.add_argument("--partition", help='row lengths, e.g. "2,1"')
        p.add_argument("--columns", action="store_true", help="read --partition as column heights")
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--certified", action="store_true", default=True, help="certified search (default)")
    mode.add_argument("--heuristic", action="store_true", help="best-effort search, not certified")
    p.add_argument("--threads", type=int, default=1)
    p.add_argument("--json", action="store_true")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ghc", description="Generalised Hermite invariants of rational quadratic forms")
    parser.add_argument("--self-test", action="store_true", help="check the lattice catalog and exit")
    parser.add_argument("--json", action="store_true")
    sub = parser.add_subparsers(dest="command")

    p = sub.add_parser("partition", help="conjugate or complement a partition")
    p.add_argument("op", choices=["conjugate", "complement"])
    p.add_argument("partition")
    p.add_argument("--n", type=int)
    p.add_argument("--columns", action="store_true")
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("invariant", help="minimum and Hermite invariant")
    _add_common(p)
    p = sub.add_parser("minima", help="list every minimal flag")
    _add_common(p)
    p = sub.add_parser("check", help="perfection, eutaxy, extremality")
    _add_common(p)
    p.add_argument("--perfect", action="store_true")
    p.add_argument("--eutactic", action="store_true")
    p.add_argument("--extreme", action="store_true")
    p = sub.add_parser("profile", help="greedy Korkine-Zolotareff profile")
    _add_common(p, partition=False)

    p = sub.add_parser("bounds", help="inequality checks")
    p.add_argument("kind", choices=["duality", "mordell", "minkowski", "berge-martinet", "base-change"])
    _add_common(p)
    p.add_argument("--n", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--gamma", default="1")
    p.add_argument("--degree", type=int, default=1)
    p.add_argument("--disc", type=int, default=1)
    p.add_argument("--weight", type=int, default=1)
    return parser


COMMANDS = {
    "partition": cmd_partition,
    "invariant": cmd_invariant,
    "minima": cmd_minima,
    "check": cmd_check,
    "profile": cmd_profile,
    "bounds": cmd_bounds,
}


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.self_test:
            return cmd_self_test(args.json)
        if not args.command:
            parser.print_help()
            return EXIT_PARSE
        return COMMANDS[args.command](args)
    except NotPositiveDefiniteError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NOT_PD
    except CertifiedLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (FormError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
