"""Command-line front end.

Exit codes: 0 success, 1 a check failed, 2 usage error, 3 a computation
precondition failed (a JSON error object is written to stderr).
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Any, Callable, Sequence

from .abelian import PolarizedAbelianType, semihom_rank
from .blowup import oracle_compare
from .chern import a_value, chi_end0, discriminant, hrr_chi, modularity_d
from .errors import ConsistencyError, PreconditionError
from .hilb2 import Hilb2Embedding, Hilb2Params, catalog, dictionary, hilb2_chern, hplus_class
from .jsonio import character_document, decode_character, dumps, encode, to_text
from .lattice import GramLattice, isotropic_analysis, min_negative_square, nl_hypotheses
from .verify import CHECK_IDS, verify_paper
from .walls import awalls, suitable


class Outcome:
    """Payload of a subcommand plus its exit status."""

    def __init__(self, payload: Any, status: int = 0, text: str | None = None):
        self.payload = payload
        self.status = status
        self.text = text


def _pair(s: str) -> tuple[int, int]:
    try:
        x, y = (int(t) for t in s.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected x,y with integers, got {s!r}") from None
    return x, y


def _rational(s: str) -> Fraction:
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {s!r}") from None


def _character(s: str):
    """``--ch`` takes inline JSON or ``@path`` to a JSON file."""
    try:
        raw = Path(s[1:]).read_text() if s.startswith("@") else s
        return decode_character(json.loads(raw))
    except (OSError, ValueError, ZeroDivisionError, TypeError) as exc:
        raise argparse.ArgumentTypeError(f"bad Chern character document: {exc}") from None


# -- subcommands ------------------------------------------------------------------------


def cmd_walls(args) -> Outcome:
    walls = awalls(GramLattice.hyperbolic(args.d, args.e), args.a)
    rows = [{"lambda": list(w.lam.coords), "q": w.q_lam} for w in walls]
    return Outcome({"d": args.d, "e": args.e, "a": args.a, "count": len(rows), "walls": rows})


def cmd_suitable(args) -> Outcome:
    ok = suitable(GramLattice.hyperbolic(args.d, args.e), args.a, args.h)
    return Outcome({"d": args.d, "e": args.e, "a": args.a, "h": list(args.h), "suitable": ok})


def cmd_min_neg_square(args) -> Outcome:
    k, holds = min_negative_square(GramLattice.hyperbolic(args.d, args.e))
    bound = Fraction(2 * args.d, 1 + args.e)
    return Outcome({"d": args.d, "e": args.e, "k_min": k, "bound": bound, "bound_holds": holds}, text=str(k))


def cmd_isotropic(args) -> Outcome:
    return Outcome(isotropic_analysis(args.e, args.d))


def cmd_hilb2_chern(args) -> Outcome:
    p = Hilb2Params(args.r0, args.m0, args.sign)
    emb = Hilb2Embedding.standard(p.m0)
    h, q = hplus_class(p, emb)
    ch = hilb2_chern(p, emb)
    return Outcome(
        {"r0": p.r0, "m0": p.m0, "sign": p.sign, "s0": p.s0, "h": h, "q_h": q, **character_document(emb.model(), ch)}
    )


def cmd_dictionary(args) -> Outcome:
    de = dictionary(args.e, args.r0, args.i, args.sign)
    return Outcome(
        {
            "m0": de.m0,
            "s0": de.s0,
            "ch3_coeff": de.ch3_coeff,
            "ch4": de.ch4,
            "e": de.e,
            "r0": de.r0,
            "i": de.i,
            "sign": de.sign,
            "econ_ok": de.econ_ok,
            "h": de.h,
            "h_div": de.h_div,
            "h_primitive": de.h_primitive,
            "c1_div": de.c1_div,
            "d0_threshold": de.d0_threshold,
            "d_threshold": de.d_threshold,
            "ch": de.ch,
        }
    )


def cmd_modularity(args) -> Outcome:
    model, ch = args.ch
    d = modularity_d(model, ch)
    a = a_value(model, ch, d) if d is not None else None
    return Outcome({"discriminant": discriminant(model, ch), "modular": d is not None, "d": d, "a": a})


def cmd_chi_end0(args) -> Outcome:
    model, ch = args.ch
    return Outcome({"chi": hrr_chi(model, ch), "chi_end0": chi_end0(model, ch)})


def cmd_oracle(args) -> Outcome:
    rep = oracle_compare(Hilb2Params(args.r0, args.m0, args.sign))
    payload = {
        "r0": rep.r0,
        "m0": rep.m0,
        "sign": rep.sign,
        "pairings_checked": rep.pairings_checked,
        "mismatches": [{"degree": d, "monomial": list(m), "grr": g, "closed_form": c} for d, m, g, c in rep.mismatches],
        "relations_checked": rep.relations_checked,
        "relation_failures": [{"relation": n, "monomial": list(m), "value": v} for n, m, v in rep.relation_failures],
        "ok": rep.ok,
    }
    return Outcome(payload, 0 if rep.ok else 1)


def cmd_semihom(args) -> Outcome:
    res = semihom_rank(PolarizedAbelianType(args.n, args.d1, args.d2), args.r0, args.a)
    payload = encode(res)
    payload.update(admissible=res.admissible, sigma_ok=res.sigma_ok)
    return Outcome(payload)


def cmd_nl_check(args) -> Outcome:
    return Outcome(nl_hypotheses(args.e, args.d, args.i, args.r0, args.a0))


def cmd_catalog(args) -> Outcome:
    rows = []
    for entry in catalog().values():
        rows.append(
            {
                "name": entry.name,
                "e": entry.e,
                "div": entry.div,
                "description": entry.description,
                **character_document(entry.model, entry.ch),
            }
        )
    return Outcome({"entries": rows})


def cmd_verify_paper(args) -> Outcome:
    results = verify_paper(args.only)
    failures = sum(not r.passed for r in results)
    lines = [f"{r.status.upper():4}  {r.check_id:22}  {r.anchor}  [expected: {r.expected}; got: {r.got}]" for r in results]
    lines.append(f"{len(results) - failures} passed, {failures} failed")
    payload = {
        "checks": [
            {"id": r.check_id, "status": r.status, "expected": r.expected, "got": r.got, "anchor": r.anchor}
            for r in results
        ],
        "passed": len(results) - failures,
        "failed": failures,
    }
    out = Outcome(payload, 1 if failures else 0, "\n".join(lines))
    if args.out:
        Path(args.out).write_text(render(out, args.format) + "\n", encoding="utf-8")
    return out


# -- rendering --------------------------------------------------------------------------


def _table(rows: list[dict]) -> str:
    cols = [k for k in rows[0] if k not in ("lattice", "description")]
    cells = [[to_text(encode(r[c])) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    fmt = lambda vals: "  ".join(v.ljust(w) for v, w in zip(vals, widths)).rstrip()  # noqa: E731
    return "\n".join([fmt(cols), fmt(["-" * w for w in widths]), *(fmt(row) for row in cells)])


def render(out: Outcome, fmt: str) -> str:
    if fmt == "json":
        return dumps(out.payload)
    if out.text is not None:
        return out.text
    data = encode(out.payload)
    if isinstance(data, dict):
        for key in ("entries", "walls"):
            if key in data and isinstance(data[key], list):
                head = [f"{k}: {to_text(v)}" for k, v in data.items() if k != key]
                body = _table(data[key]) if data[key] else "(none)"
                return "\n".join(head + [body]) if head else body
        width = max(len(k) for k in data)
        return "\n".join(f"{k.ljust(width)}  {to_text(v)}" for k, v in data.items())
    return to_text(data)


# -- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("json", "table"), default="json")
    common.add_argument("--quiet", action="store_true", help="print nothing; report through the exit code")

    parser = argparse.ArgumentParser(prog="hkmodular", description="Exact computations for modular sheaves on K3^[2]-type fourfolds.")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name: str, fn: Callable, help: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help)
        p.set_defaults(fn=fn)
        return p

    p = add("walls", cmd_walls, "a-walls of the lattice [[0,d],[d,e]]")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--a", type=_rational, required=True)

    p = add("suitable", cmd_suitable, "is h a-suitable for f = (1,0)")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--a", type=_rational, required=True)
    p.add_argument("--h", type=_pair, required=True, help="coordinates x,y of h in the basis (f, h0)")

    p = add("min-neg-square", cmd_min_neg_square, "smallest k with a class of square -k")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--e", type=int, required=True)

    p = add("isotropic", cmd_isotropic, "isotropic rays of [[0,d],[d,e]]")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--d", type=int, required=True)

    for name, fn, help in (
        ("hilb2-chern", cmd_hilb2_chern, "Chern character of F[2]^± on S^[2]"),
        ("oracle", cmd_oracle, "compare the blow-up GRR computation with the closed form"),
    ):
        p = add(name, fn, help)
        p.add_argument("--r0", type=int, required=True)
        p.add_argument("--m0", type=int, required=True)
        p.add_argument("--sign", choices=("+", "-"), default="+")

    p = add("dictionary", cmd_dictionary, "translate (e, r0, i) into (m0, s0) and the Chern character")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--r0", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--sign", choices=("+", "-"), default="+")

    for name, fn, help in (
        ("modularity", cmd_modularity, "discriminant, d(F) and a(F)"),
        ("chi-end0", cmd_chi_end0, "χ(F) and χ(End_0 F) by HRR"),
    ):
        p = add(name, fn, help)
        p.add_argument("--ch", type=_character, required=True, help="Chern character JSON, inline or @file")

    p = add("semihom", cmd_semihom, "rank of simple semi-homogeneous bundles")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--d1", type=int, default=1)
    p.add_argument("--d2", type=int, default=1)
    p.add_argument("--r0", type=int, required=True)
    p.add_argument("--a", type=int, default=None)

    p = add("nl-check", cmd_nl_check, "numeric hypotheses on a Noether-Lefschetz divisor")
    p.add_argument("--e", type=int, required=True)
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--i", type=int, required=True)
    p.add_argument("--r0", type=int, required=True)
    p.add_argument("--a0", type=_rational, default=None)

    add("catalog", cmd_catalog, "known modular bundles")

    p = add("verify-paper", cmd_verify_paper, "run the full identity battery")
    p.add_argument("--only", action="append", choices=CHECK_IDS, metavar="CHECK", help=f"one of: {', '.join(CHECK_IDS)}")
    p.add_argument("--out", default=None, help="also write the report to this file")
    p.set_defaults(format="table")
    return parser


def run_command(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        out = args.fn(args)
    except PreconditionError as exc:
        print(json.dumps({"error": "precondition", "command": args.command, "message": str(exc)}), file=sys.stderr)
        return 3
    except ConsistencyError as exc:
        print(json.dumps({"error": "consistency", "command": args.command, "message": str(exc)}), file=sys.stderr)
        return 1
    if not args.quiet:
        print(render(out, args.format))
    return out.status


def main() -> None:
    sys.exit(run_command())
