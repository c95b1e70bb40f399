"""``matsuo-lab``: build spaces, compute idempotent spectra and run verification suites.

Exit codes: 0 success, 1 verification mismatch, 2 parse error, 3 construction
error, 4 degenerate alpha, 5 incomplete spectrum.
"""

from __future__ import annotations

import argparse
import json
import random
import re
import sys

from . import __version__
from .axial import IncompleteSpectrum, decompose_identity, eigendecompose, fusion_table
from .cases import (
    build_chain,
    run_alpha_quarter,
    run_an_chain,
    run_dn_involutions,
    run_point_axes,
    run_seress_sample,
    run_spectra_tables,
    run_vreg_campaign,
    DEFAULT_CAMPAIGN,
)
from .families import ConstructionError, SpecError, parse_space_spec
from .fischer import SCHEMA, BoundaryGraph, FischerError, regularity
from .matsuo import DegenerateAlpha, MatsuoAlgebra
from .scalars import ALPHA, ScalarError, format_scalar, parse_scalar

EXIT_OK, EXIT_MISMATCH, EXIT_PARSE, EXIT_BUILD, EXIT_DEGENERATE, EXIT_INCOMPLETE = 0, 1, 2, 3, 4, 5

SUITES = ("spectra", "an-chain", "dn-involutions", "vreg", "alpha-quarter", "seress", "points", "all")


class UsageError(ValueError):
    pass


def parse_alpha(text: str):
    if text == "generic":
        return ALPHA
    try:
        return parse_scalar(text, generic=False)
    except (ValueError, ZeroDivisionError, ScalarError) as exc:
        raise UsageError(f"bad alpha {text!r}: {exc}") from exc


def parse_charge(text: str | None, alpha):
    if text is None:
        return None
    try:
        return parse_scalar(text, generic=None if alpha == ALPHA else False)
    except (ValueError, ZeroDivisionError, ScalarError) as exc:
        raise UsageError(f"bad charge {text!r}: {exc}") from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--space", help='space spec: "A5", "D6", "E6", "Aff3:3", "W3A:3", "A4pm" or a file')
    common.add_argument("--alpha", default="generic", help='"generic" (default) or a rational such as 1/4')
    common.add_argument("--charge", default=None, help="form parameter c; absent by default")
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--out", default=None, help="output file (stdout if absent)")
    common.add_argument("--size-cap", type=int, default=2000)
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")

    parser = argparse.ArgumentParser(prog="matsuo-lab", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    b = sub.add_parser("build", parents=[common], help="build a space and summarise it")
    b.add_argument("--summary-only", action="store_true", help="do not write the space file")

    s = sub.add_parser("spectrum", parents=[common], help="spectrum of an idempotent")
    s.add_argument("target", help='"point:i", "id:i,j,...", "chain:e_i" or "chain:ehat_i"')
    s.add_argument("--fusion", action="store_true", help="include the fusion table")

    v = sub.add_parser("verify", parents=[common], help="run a verification suite")
    v.add_argument("--suite", choices=SUITES, default="all")
    v.add_argument("--max-n", type=int, default=None)
    v.add_argument("--depth-cap", type=int, default=None)
    v.add_argument("--sample", type=int, default=None, help="points sampled by the points suite")
    return parser


# ---------------------------------------------------------------------------
# output


def _emit(args, payload: dict, table: str) -> None:
    text = json.dumps(payload, indent=2) + "\n" if args.format == "json" else table
    if args.out and args.command != "build":
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _space(args):
    if not args.space:
        raise UsageError("--space is required")
    return parse_space_spec(args.space, size_cap=args.size_cap)


# ---------------------------------------------------------------------------
# commands


def cmd_build(args) -> int:
    g = _space(args)
    if isinstance(g, BoundaryGraph):
        comps = g.components()
        payload = {
            "schema": SCHEMA,
            "space": args.space,
            "kind": "graph",
            "points": g.size,
            "edges": sum(len(a) for a in g.adjacency) // 2,
            "regularity": g.regularity(),
            "components": len(comps),
        }
    else:
        comps = g.components()
        payload = {
            "schema": SCHEMA,
            "space": g.name,
            "kind": "fischer",
            "points": g.point_count,
            "lines": g.line_count,
            "regularity": regularity(g),
            "components": len(comps),
            "component_sizes": [len(c) for c in comps],
        }
        if args.out and not args.summary_only:
            with open(args.out, "w") as fh:
                fh.write(g.to_text())
            payload["written"] = args.out
    table = "".join(f"{k:<16}{v}\n" for k, v in payload.items() if k != "schema")
    _emit(args, payload, table)
    return EXIT_OK


_CHAIN = re.compile(r"^chain:(e|ehat)_(\d+)$")


def _parse_indices(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"bad point list {text!r}") from exc


def cmd_spectrum(args) -> int:
    alpha = parse_alpha(args.alpha)
    charge = parse_charge(args.charge, alpha)
    target = args.target.strip()
    m = _CHAIN.match(target)
    if m:
        sm = re.fullmatch(r"A(\d+)(pm|±)", (args.space or "").strip())
        if not sm:
            raise UsageError("chain targets need a doubled symmetric space such as A5pm")
        n, i = int(sm.group(1)), int(m.group(2))
        if not 1 <= i <= n:
            raise UsageError(f"chain index must lie in 1..{n}")
        chain = build_chain(n, alpha, charge)
        A = chain.algebra
        e, dec = (chain.e if m.group(1) == "e" else chain.ehat)[i]
        space_name = f"A{n}pm"
    else:
        g = _space(args)
        if isinstance(g, BoundaryGraph):
            raise UsageError("spectra need a Fischer space")
        A = MatsuoAlgebra(g, alpha, charge)
        space_name = g.name
        kind, _, rest = target.partition(":")
        if kind == "point":
            idx = _parse_indices(rest)
            x = idx[0] if len(idx) == 1 else None
            if x is None or not 0 <= x < g.point_count:
                raise UsageError(f"no point {rest!r}")
            e = A.point(x)
            dec = eigendecompose(A, e, sorted({A.one, A.zero, A.alpha}, key=str) if A.generic else None)
        elif kind == "id":
            seed = _parse_indices(rest)
            if any(not 0 <= x < g.point_count for x in seed):
                raise UsageError(f"point out of range in {rest!r}")
            e, dec = decompose_identity(A, sorted(g.closure(seed)))
        else:
            raise UsageError(f"unknown target {target!r}")
    payload = {
        "schema": SCHEMA,
        "space": space_name,
        "alpha": format_scalar(A.alpha),
        "target": target,
        "diagonalisable": dec.diagonalisable,
        "eigenvalues": [{"value": format_scalar(lam), "multiplicity": k} for lam, k in dec.multiplicities.items()],
    }
    if A.charge is not None:
        payload["central_charge"] = format_scalar(A.central_charge(e))
    if args.fusion:
        payload["fusion"] = fusion_table(A, e, dec).to_json()
    lines = [f"{target} in {space_name} at a = {payload['alpha']}"]
    lines += [f"  {r['value']:<44}{r['multiplicity']}" for r in payload["eigenvalues"]]
    lines.append(f"  diagonalisable: {dec.diagonalisable}")
    if "central_charge" in payload:
        lines.append(f"  central charge: {payload['central_charge']}")
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK


def _suite_reports(args) -> list:
    alpha = parse_alpha(args.alpha)
    charge = parse_charge(args.charge, alpha)
    suite, max_n = args.suite, args.max_n
    reports = []
    if suite in ("spectra", "all"):
        reports.append(run_spectra_tables(max_n=max_n or 8))
    if suite in ("an-chain", "all"):
        ns = [max_n] if max_n else [5, 6]
        reports += [run_an_chain(n, alpha, charge) for n in ns]
    if suite in ("dn-involutions", "all"):
        ms = [max_n] if max_n else [5, 6]
        reports += [run_dn_involutions(m, alpha) for m in ms]
    if suite in ("alpha-quarter", "all"):
        reports.append(run_alpha_quarter(range(4, (max_n or 12) + 1)))
    if suite in ("seress", "all"):
        reports.append(run_seress_sample(max_n or (4 if suite == "all" else 5), args.depth_cap or 4))
    if suite in ("vreg", "all"):
        fams = DEFAULT_CAMPAIGN if max_n is None else [(f, n) for f, n in DEFAULT_CAMPAIGN if n <= max_n]
        reports.append(run_vreg_campaign(fams, size_cap=args.size_cap, chain_depth_cap=args.depth_cap))
    if suite == "points":
        g = _space(args)
        if isinstance(g, BoundaryGraph):
            raise UsageError("the points suite needs a Fischer space")
        pts = list(range(g.point_count))
        if args.sample is not None and args.sample < len(pts):
            pts = sorted(random.Random(args.seed).sample(pts, args.sample))
        reports.append(run_point_axes(g, alpha, pts))
    return reports


def cmd_verify(args) -> int:
    reports = _suite_reports(args)
    verdicts = [r.verdict for r in reports]
    overall = "fail" if "fail" in verdicts else ("partial" if "partial" in verdicts else "pass")
    payload = {"schema": SCHEMA, "suite": args.suite, "verdict": overall, "reports": [r.to_json() for r in reports]}
    lines = []
    for r in reports:
        lines.append(f"{r.name:<16}{json.dumps(r.params, sort_keys=True):<60}{r.verdict}")
        lines += [f"    failed: {name}" for name in r.failed()]
    lines.append(f"overall: {overall}")
    _emit(args, payload, "\n".join(lines) + "\n")
    return EXIT_OK if overall == "pass" else EXIT_MISMATCH


COMMANDS = {"build": cmd_build, "spectrum": cmd_spectrum, "verify": cmd_verify}


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except (UsageError, SpecError) as exc:
        print(f"matsuo-lab: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except (ConstructionError, FischerError) as exc:
        print(f"matsuo-lab: cannot construct: {exc}", file=sys.stderr)
        return EXIT_BUILD
    except DegenerateAlpha as exc:
        print(f"matsuo-lab: degenerate alpha: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except IncompleteSpectrum as exc:
        print(f"matsuo-lab: incomplete spectrum: {exc}", file=sys.stderr)
        return EXIT_INCOMPLETE


if __name__ == "__main__":
    sys.exit(main())
