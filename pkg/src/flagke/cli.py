"""Command-line front end.

Subcommands: ``koszul``, ``classify``, ``profile``, ``census``.  Diagrams are
written ``<family><rank>:<mask>`` with ``o`` for white and ``*`` for black,
nodes left to right in index order (D fork tips last).  Diagnostics go to
stderr; exit code 2 flags parse/usage problems and 3 mathematical domain
errors.
"""

from __future__ import annotations

import argparse
import json
import math
import sys
from fractions import Fraction
from typing import Optional, Sequence

from . import bundle as bd
from . import census as cs
from . import einstein as es
from . import painted as pd
from . import profile as pf
from . import rootspace as rs
from .errors import ConfigurationError, DiagramParseError, DomainError, FlagkeError, UsageError


def parse_diagram(text: str) -> pd.PaintedDiagram:
    """Parse ``<family><rank>:<mask>``; errors carry the byte offset."""
    if not text:
        raise DiagramParseError("empty diagram", 0)
    family = text[0]
    if family not in rs.FAMILIES:
        raise DiagramParseError(f"family must be one of A, B, C, D, got {family!r}", 0)
    colon = text.find(":")
    if colon < 0:
        raise DiagramParseError("missing ':' between rank and mask", len(text))
    rank_text = text[1:colon]
    if not rank_text.isdigit():
        raise DiagramParseError(f"rank must be a positive integer, got {rank_text!r}", 1)
    rank = int(rank_text)
    try:
        algebra = rs.Algebra(family, rank)
    except ConfigurationError as exc:
        raise DiagramParseError(str(exc), 1) from exc
    mask = text[colon + 1:]
    if len(mask) != rank:
        raise DiagramParseError(f"mask must have exactly {rank} characters, got {len(mask)}", colon + 1)
    black = set()
    for i, ch in enumerate(mask):
        if ch == "*":
            black.add(i + 1)
        elif ch != "o":
            raise DiagramParseError(f"mask characters must be 'o' or '*', got {ch!r}", colon + 1 + i)
    return pd.PaintedDiagram(algebra, frozenset(black))


def _parse_rational(text: str) -> Fraction:
    """Exact rational from 'p' or 'p/q'; floats are refused."""
    text = text.strip()
    if "." in text or "e" in text.lower():
        raise UsageError(f"exact rational required (use p/q), got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"cannot parse rational {text!r}") from exc


def _parse_chi(text: Optional[str], expected: int) -> tuple[int, ...]:
    if not text:
        chi: tuple[int, ...] = ()
    else:
        parts = [p.strip() for p in text.split(",")]
        try:
            chi = tuple(int(p) for p in parts)
        except ValueError as exc:
            raise UsageError(f"chi must be a comma-separated integer list, got {text!r}") from exc
    if len(chi) != expected:
        raise UsageError(f"chi needs {expected} entries (one per black node), got {len(chi)}")
    return chi


def _data_from_args(args) -> bd.AdmissibleData:
    dg = parse_diagram(args.diagram)
    chi = _parse_chi(args.chi, len(dg.black))
    if args.m1:
        if args.string is not None or args.beta is not None:
            raise UsageError("--m1 excludes --string/--beta")
        return bd.admissible_data(dg, None, None, chi)
    if args.string is None or args.beta is None:
        raise UsageError("rank m > 1 needs --string and --beta (or use --m1)")
    return bd.admissible_data(dg, args.string, args.beta, chi)


def _frac(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}" if x.denominator != 1 else str(x.numerator)


def _cmd_koszul(args) -> int:
    dg = parse_diagram(args.diagram)
    data = pd.koszul(dg)
    if args.json:
        payload = {
            "diagram": dg.key(),
            "sigma": [_frac(c) for c in data.sigma.coeffs],
            "koszul_numbers": {str(j): n for j, n in sorted(data.numbers.items())},
        }
        print(json.dumps(payload, indent=None, separators=(",", ":")))
    else:
        print(f"diagram {dg.key()}")
        print("sigma " + " ".join(_frac(c) for c in data.sigma.coeffs))
        print("koszul " + " ".join(f"n_{j}={n}" for j, n in sorted(data.numbers.items())))
    return 0


def _verdict_payload(data: bd.AdmissibleData, verdict: es.EinsteinVerdict) -> dict:
    return {
        "diagram": data.s0.key(),
        "m": data.m,
        "string_start": None if data.string is None else data.string.start,
        "beta_end": data.beta_end,
        "chi": list(data.chi),
        "black_nodes": list(data.black_nodes),
        "lambda_zero": {
            "exists": verdict.lambda_zero.exists,
            "required_chi": None if verdict.lambda_zero.required_chi is None
            else list(verdict.lambda_zero.required_chi),
        },
        "lambda_pos": {
            "exists": verdict.lambda_pos.exists,
            "constraint": [str(b) for b in verdict.lambda_pos.constraint],
        },
        "lambda_neg": {
            "exists": verdict.lambda_neg.exists,
            "constraint": [str(b) for b in verdict.lambda_neg.constraint],
            "complete": verdict.lambda_neg.complete,
        },
        "ray_extends": verdict.ray_extends,
        "kappa_sq": _frac(bd.kappa(data)[0]) if _kappa_defined(data) else None,
    }


def _kappa_defined(data: bd.AdmissibleData) -> bool:
    return data.m > 1 or any(data.chi)


def _cmd_classify(args) -> int:
    data = _data_from_args(args)
    verdict = es.classify(data)
    if args.json:
        print(json.dumps(_verdict_payload(data, verdict), separators=(",", ":")))
        return 0
    print(f"diagram {data.s0.key()}  m={data.m}"
          + ("" if data.string is None else f"  string@{data.string.start}  beta={data.beta_end}"))
    z = verdict.lambda_zero
    req = "" if z.required_chi is None else "  required_chi=" + ",".join(str(k) for k in z.required_chi)
    print(f"lambda=0  exists={'yes' if z.exists else 'no'}{req}")
    print(f"lambda>0  exists={'yes' if verdict.lambda_pos.exists else 'no'}  "
          + "; ".join(str(b) for b in verdict.lambda_pos.constraint))
    print(f"lambda<0  exists={'yes' if verdict.lambda_neg.exists else 'no'}  "
          + "; ".join(str(b) for b in verdict.lambda_neg.constraint)
          + f"  complete={'yes' if verdict.lambda_neg.complete else 'no'}")
    print(f"ray_extends={'yes' if verdict.ray_extends else 'no'}")
    if _kappa_defined(data):
        print(f"kappa_sq={_frac(bd.kappa(data)[0])}")
    return 0


def _cmd_profile(args) -> int:
    data = _data_from_args(args)
    lam = _parse_rational(args.lam)
    prof = pf.metric_profile(data, lam)
    n = args.samples
    if n < 2:
        raise UsageError("--samples must be at least 2")
    if math.isfinite(prof.u_sup):
        t_hi = pf.t_of_f(prof, 0.97 * prof.f_sup)
    else:
        t_hi = pf.t_of_f(prof, 8.0 * prof.kappa)
    ts = [t_hi * i / (n - 1) for i in range(n)]
    rows = []
    for t in ts:
        f = pf.f_of_t(prof, t)
        res = pf.ode_residual(prof, t) if t > 0 else 0.0
        rows.append((t, f, res))
    if args.json:
        payload = {
            "diagram": data.s0.key(),
            "m": data.m,
            "lambda": _frac(lam),
            "kappa": prof.kappa,
            "kappa_sq": _frac(prof.kappa_sq),
            "f_sup": None if not math.isfinite(prof.f_sup) else prof.f_sup,
            "d": prof.d,
            "samples": [{"t": t, "f": f, "residual": r} for t, f, r in rows],
        }
        print(json.dumps(payload, separators=(",", ":")))
        return 0
    print(f"diagram {data.s0.key()}  m={data.m}  lambda={_frac(lam)}")
    print(f"kappa={prof.kappa:.12g}  kappa_sq={_frac(prof.kappa_sq)}  "
          f"f_sup={'inf' if not math.isfinite(prof.f_sup) else format(prof.f_sup, '.12g')}  d={prof.d}")
    print(f"{'t':>18} {'f(t)':>18} {'residual':>12}")
    for t, f, r in rows:
        print(f"{t:18.12g} {f:18.12g} {r:12.3e}")
    return 0


def _cmd_census(args) -> int:
    records = list(cs.enumerate_records(args.family, args.max_rank))
    if args.out == "-":
        cs.write_jsonl(records, sys.stdout)
    else:
        with open(args.out, "w", encoding="utf-8") as fh:
            cs.write_jsonl(records, fh)
    if args.summary:
        rows = cs.summarize(records)
        with open(args.summary, "w", encoding="utf-8", newline="") as fh:
            cs.write_summary_csv(rows, fh)
    print(f"census: {len(records)} records for family {args.family} up to rank {args.max_rank}",
          file=sys.stderr)
    return 0


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="flagke",
        description="Kaehler-Einstein existence tests and metric profiles for "
                    "homogeneous bundles over classical flag manifolds",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("koszul", help="Koszul form and numbers of a painted diagram")
    p.add_argument("diagram")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=_cmd_koszul)

    def add_data_args(q):
        q.add_argument("diagram")
        q.add_argument("--string", type=int, default=None,
                       help="least node index of the white string (m > 1)")
        q.add_argument("--beta", choices=("left", "right"), default=None)
        q.add_argument("--m1", action="store_true", help="rank-one bundle: no string")
        q.add_argument("--chi", default="", help="comma-separated integers, one per black node")
        q.add_argument("--json", action="store_true")

    p = sub.add_parser("classify", help="Einstein existence verdict for a bundle datum")
    add_data_args(p)
    p.set_defaults(func=_cmd_classify)

    p = sub.add_parser("profile", help="sampled profile f(t) of an admitted datum")
    add_data_args(p)
    p.add_argument("--lambda", dest="lam", required=True, help="Einstein constant, exact p/q")
    p.add_argument("--samples", type=int, default=64)
    p.set_defaults(func=_cmd_profile)

    p = sub.add_parser("census", help="enumerate and classify all data of a family")
    p.add_argument("--family", required=True, choices=rs.FAMILIES)
    p.add_argument("--max-rank", type=int, required=True)
    p.add_argument("--out", required=True, help="output JSONL path, or - for stdout")
    p.add_argument("--summary", default=None, help="optional CSV summary path")
    p.set_defaults(func=_cmd_census)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (DiagramParseError, UsageError, ConfigurationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except FlagkeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
