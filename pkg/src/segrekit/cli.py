"""Command-line front end: ``segrekit <command> [options]``.

Exit codes: 0 success, 1 corpus mismatch, 2 usage error, 3 budget abort.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from .corpus import run_corpus
from .defparse import ParseError, VarietyData, VarietyFormatError, load_variety, parse_expression
from .gb import GREVLEX, LEX, BudgetExceeded, budget_scope, default_budget, krull_dimension
from .numprobe import (
    DEFAULT_SEED, ProbeConfig, ProbeError, curve_from_text, germ_consistency_probe,
    region_csv, region_scan, semicontinuity_scan,
)
from .segrecore import (
    Point, classify_point, complexify, cone_certificate, degenerate_locus_full, segre_dim_at,
    segre_ideal_at, xk_membership_at,
)

EXAMPLES = {
    "parse": "segrekit parse --input isol.var",
    "complexify": "segrekit complexify --input isol.var",
    "segre-at": 'segrekit segre-at --input mfld.var --point "0,0"',
    "dim-at": 'segrekit dim-at --input isol.var --point "1,0,1"',
    "locus": "segrekit locus --input isol.var",
    "classify": 'segrekit classify --input nonvar.var --point "0,0,-1"',
    "probe": 'segrekit probe --input nonvar.var --point "0,0,1" --candidate "z;w"',
    "scan": 'segrekit scan --input nonvar.var --curve "0,0,t" --grid "-1;1" --k 3 --candidate "z;w"',
    "certify": 'segrekit certify --poly "x^2 + y^2" --vars "x y"',
    "corpus": "segrekit corpus --filter isol,nonvar",
}


class UsageError(Exception):
    def __init__(self, flag: str, message: str, command: str | None = None):
        super().__init__(message)
        self.flag = flag
        self.command = command


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError("", message)


def _build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--budget", type=int, help="S-pair reduction budget per basis")

    parser = _Parser(prog="segrekit", description="Segre varieties of real-algebraic sets.")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name, help_text, *, variety=True, point=False):
        p = sub.add_parser(name, parents=[common], help=help_text)
        if variety:
            p.add_argument("--input", required=True, help="variety file")
        if point:
            p.add_argument("--point", required=True, help='comma-separated Gaussian rationals, e.g. "1/2+1/3i,0,2"')
        return p

    add("parse", "parse and normalize a variety file")
    add("complexify", "complexified ideal and its sigma-closure proof")
    p = add("segre-at", "Segre ideal at a point", point=True)
    p.add_argument("--order", choices=["lex", "grevlex"], default="grevlex")
    add("dim-at", "dimension of the Segre variety at a point", point=True)
    p = add("locus", "equations of the fully degenerate locus")
    p.add_argument("--order", choices=["lex", "grevlex"], default="grevlex")
    p = add("classify", "full report at a point", point=True)
    p.add_argument("--k", type=int, help="also report membership for this k")
    p = add("probe", "numerical germ-consistency probe", point=True)
    p.add_argument("--candidate", required=True, help='";"-separated candidate polynomials')
    _probe_flags(p)
    p = add("scan", "region scan along a curve or semicontinuity scan along a path")
    p.add_argument("--curve", help='comma-separated coordinates in t, e.g. "0,0,t"')
    p.add_argument("--grid", help='";"-separated rational values of t')
    p.add_argument("--path", help='";"-separated points; the last one is the limit')
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--candidate", help='";"-separated candidate polynomials')
    p.add_argument("--csv", help="write the region table as CSV to this path")
    _probe_flags(p)
    p = add("certify", "homogeneity and irreducibility certificate", variety=False)
    p.add_argument("--poly", required=True, help="polynomial in real variables")
    p.add_argument("--vars", required=True, help="space-separated variable names")
    p = add("corpus", "run the bundled worked examples", variety=False)
    p.add_argument("--filter", help="comma-separated entry names")
    _probe_flags(p)
    return parser


def _probe_flags(p):
    p.add_argument("--radius", type=float, default=0.25)
    p.add_argument("--samples", type=int, default=64)
    p.add_argument("--seed", type=lambda s: int(s, 0), default=DEFAULT_SEED)


# helpers -------------------------------------------------------------------------

def _variety(args) -> VarietyData:
    try:
        return load_variety(Path(args.input))
    except OSError as exc:
        raise UsageError("--input", f"cannot read {args.input}: {exc.strerror}")
    except (ParseError, VarietyFormatError) as exc:
        raise UsageError("--input", str(exc))


def _point(text: str, n: int, flag: str = "--point") -> Point:
    try:
        q = Point.parse(text)
    except ValueError as exc:
        raise UsageError(flag, str(exc))
    if len(q) != n:
        raise UsageError(flag, f"expected {n} coordinates, got {len(q)}")
    return q


def _k(k: int | None, n: int, flag: str = "--k"):
    if k is not None and not 0 <= k <= n:
        raise UsageError(flag, f"k must lie in 0..{n}, got {k}")


def _polys(text: str, X: VarietyData, flag: str):
    try:
        return [parse_expression(t, X.ambient_vars) for t in text.split(";") if t.strip()]
    except ParseError as exc:
        raise UsageError(flag, str(exc))


def _config(args) -> ProbeConfig:
    try:
        return ProbeConfig(radius=args.radius, samples=args.samples, seed=args.seed)
    except ValueError as exc:
        raise UsageError("--radius/--samples", str(exc))


def _order(args):
    return LEX if args.order == "lex" else GREVLEX


# commands ------------------------------------------------------------------------

def cmd_parse(args):
    X = _variety(args)
    return {
        "name": X.name,
        "vars": list(X.ambient_vars),
        "generators": [g.render() for g in X.generators],
        "units": [str(u) for u in X.units],
    }


def cmd_complexify(args):
    C = complexify(_variety(args))
    return {
        "registry": list(C.registry),
        "generators": [g.render() for g in C.generators],
        "sigma_closed": True,
        "sigma_proof": [{"image": img.render(), "normal_form": nf.render()} for img, nf in C.sigma_proof],
    }


def cmd_segre_at(args):
    X = _variety(args)
    q = _point(args.point, X.n)
    S = segre_ideal_at(complexify(X), q)
    return {"point": str(q), "order": args.order, "basis": S.groebner(_order(args)).render()}


def cmd_dim_at(args):
    X = _variety(args)
    q = _point(args.point, X.n)
    return {"point": str(q), "segre_dim": segre_dim_at(complexify(X), q)}


def cmd_locus(args):
    L = degenerate_locus_full(complexify(_variety(args)))
    return {"order": args.order, "basis": L.groebner(_order(args)).render(),
            "dimension": krull_dimension(L)}


def cmd_classify(args):
    X = _variety(args)
    q = _point(args.point, X.n)
    _k(args.k, X.n)
    C = complexify(X)
    out = classify_point(C, q).to_dict()
    if args.k is not None:
        out["k"] = args.k
        out["xk_member"] = xk_membership_at(C, q, args.k)
    return out


def cmd_probe(args):
    X = _variety(args)
    q = _point(args.point, X.n)
    cands = _polys(args.candidate, X, "--candidate")
    try:
        verdict = germ_consistency_probe(X, q, cands, _config(args))
    except ProbeError as exc:
        raise UsageError("--point/--candidate", str(exc))
    return {"point": str(q), "candidate": [c.render() for c in cands], **verdict.to_dict()}


def cmd_scan(args):
    X = _variety(args)
    cfg = _config(args)
    if args.path:
        if args.curve or args.grid:
            raise UsageError("--path", "use either --path or --curve/--grid")
        k = 0 if args.k is None else args.k
        _k(k, X.n)
        path = [_point(p, X.n, "--path") for p in args.path.split(";") if p.strip()]
        return {"mode": "semicontinuity", "k": k, **semicontinuity_scan(X, path, k).to_dict()}
    if not args.curve or args.grid is None:
        raise UsageError("--curve", "scan needs --path, or both --curve and --grid")
    if args.k is None:
        raise UsageError("--k", "region scans need --k")
    _k(args.k, X.n)
    try:
        curve = curve_from_text(args.curve, X.ambient_vars)
        grid = [Fraction(t.strip()) for t in args.grid.split(";") if t.strip()]
    except (ValueError, ParseError, ZeroDivisionError) as exc:
        raise UsageError("--curve/--grid", str(exc))
    cands = _polys(args.candidate, X, "--candidate") if args.candidate else []
    try:
        rows = region_scan(X, curve, grid, args.k, cands, cfg)
    except ProbeError as exc:
        raise UsageError("--candidate", str(exc))
    if args.csv:
        Path(args.csv).write_text(region_csv(rows), encoding="utf-8")
    return {"mode": "region", "k": args.k, "rows": [r.to_dict() for r in rows]}


def cmd_certify(args):
    names = args.vars.split()
    try:
        P = parse_expression(args.poly, [], extra_vars=names)
    except ParseError as exc:
        raise UsageError("--poly", str(exc))
    if P.is_zero():
        raise UsageError("--poly", "zero polynomial")
    return cone_certificate(P).to_dict()


def cmd_corpus(args):
    names = [n.strip() for n in args.filter.split(",") if n.strip()] if args.filter else None
    try:
        return run_corpus(names, _config(args))
    except KeyError as exc:
        raise UsageError("--filter", exc.args[0])


COMMANDS = {
    "parse": cmd_parse, "complexify": cmd_complexify, "segre-at": cmd_segre_at,
    "dim-at": cmd_dim_at, "locus": cmd_locus, "classify": cmd_classify, "probe": cmd_probe,
    "scan": cmd_scan, "certify": cmd_certify, "corpus": cmd_corpus,
}
RANDOMIZED = {"probe", "scan", "corpus"}


# output --------------------------------------------------------------------------

def _text(value, indent: int = 0) -> list[str]:
    pad = "  " * indent
    lines = []
    if isinstance(value, dict):
        for key, v in value.items():
            if isinstance(v, (dict, list)) and v:
                lines.append(f"{pad}{key}:")
                lines += _text(v, indent + 1)
            else:
                lines.append(f"{pad}{key}: {_scalar(v)}")
    elif isinstance(value, list):
        for v in value:
            if isinstance(v, (dict, list)) and v:
                sub = _text(v, indent + 1)
                lines.append(f"{pad}- {sub[0].strip()}")
                lines += sub[1:]
            else:
                lines.append(f"{pad}- {_scalar(v)}")
    else:
        lines.append(pad + _scalar(value))
    return lines


def _scalar(v) -> str:
    if isinstance(v, (dict, list)) or v is None or isinstance(v, bool):
        return json.dumps(v)
    return str(v)


def render(payload: dict, as_json: bool) -> str:
    if as_json:
        return json.dumps(payload, indent=2)
    return "\n".join(_text(payload))


VALUE_FLAGS = {"--input", "--point", "--k", "--order", "--radius", "--samples", "--seed",
               "--budget", "--filter", "--candidate", "--curve", "--grid", "--path", "--csv",
               "--poly", "--vars"}


def _glue(argv: list[str]) -> list[str]:
    """Join ``--flag value`` so values such as ``-1;1`` are not read as options."""
    out = []
    it = iter(argv)
    for a in it:
        if a in VALUE_FLAGS:
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def main(argv=None) -> int:
    argv = _glue(list(sys.argv[1:] if argv is None else argv))
    parser = _build_parser()
    command = next((a for a in argv if a in COMMANDS), None)
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("", "missing command")
        if args.budget is not None and args.budget < 1:
            raise UsageError("--budget", "budget must be positive")
        start = time.perf_counter()
        with budget_scope(args.budget if args.budget is not None else default_budget()):
            result = COMMANDS[args.command](args)
        elapsed = (time.perf_counter() - start) * 1000
    except UsageError as exc:
        flag = f"{exc.flag}: " if exc.flag else ""
        example = EXAMPLES.get(command, "segrekit classify --input isol.var --point \"0,0,0\"")
        print(f"usage error: {flag}{exc}", file=sys.stderr)
        print(f"example: {example}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 3
    payload = {
        "command": args.command,
        "input": getattr(args, "input", None),
        "result": result,
        "timing_ms": round(elapsed, 3),
    }
    if args.command in RANDOMIZED:
        payload["seed"] = args.seed
    print(render(payload, args.json))
    if args.command == "corpus" and not result["pass"]:
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
