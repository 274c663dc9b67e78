"""Command-line interface: spectra, entropies, branch points, verification sweeps.

The CLI only formats what the library computes.  Row schema (CSV header and
JSON object keys are identical):

    n,N,L,boundary,lambda_singlet,lambda_adjoint,S,alpha,S_alpha_re,S_alpha_im,verified,max_dev

N = -1 encodes the open chain (whose block weights are chain-length
independent).  Absent fields are empty in CSV and null in JSON.  Branch
points use their own schema:

    n,L,m,sign,alpha_re,alpha_im,residual,parity

Numbers are emitted with 17 significant digits so doubles round-trip.
Exit codes: 0 success, 1 verification failure, 2 usage/config error,
3 resource-budget error.
"""

from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from dataclasses import dataclass
from typing import List, Optional, Sequence, Union

from . import closed_form, oracle, states
from .checks import CHECKS, run_checks
from .errors import BranchPointCondition, BudgetError

CSV_HEADER = ["n", "N", "L", "boundary", "lambda_singlet", "lambda_adjoint",
              "S", "alpha", "S_alpha_re", "S_alpha_im", "verified", "max_dev"]
BRANCH_HEADER = ["n", "L", "m", "sign", "alpha_re", "alpha_im", "residual", "parity"]

AMP_BUDGET_ENV = "VBSENT_AMP_BUDGET"
MATRIX_BUDGET_ENV = "VBSENT_MATRIX_BUDGET"


def fmt(value: Optional[float]) -> str:
    return "" if value is None else f"{value:.17g}"


def alpha_literal(alpha: Union[float, complex, None]) -> str:
    if alpha is None:
        return ""
    if isinstance(alpha, complex):
        return f"{alpha.real:.17g}{alpha.imag:+.17g}i"
    return f"{alpha:.17g}"


def parse_alpha(text: str) -> Union[float, complex]:
    """Parse '2', '0.5', '1.5+0.5i' or '1.5-0.5i' (no spaces)."""
    text = text.strip()
    if not text.endswith("i"):
        return float(text)
    body = text[:-1]
    split = -1
    for i in range(len(body) - 1, 0, -1):  # last sign not part of an exponent
        if body[i] in "+-" and body[i - 1] not in "eE":
            split = i
            break
    if split < 1:
        raise ValueError(f"cannot parse complex order {text!r}; expected a+bi")
    return complex(float(body[:split]), float(body[split:]))


def parse_span(text: str) -> List[int]:
    """Parse '4' or '1..8' into an inclusive integer list."""
    if ".." in text:
        lo, hi = text.split("..", 1)
        lo, hi = int(lo), int(hi)
        if hi < lo:
            raise ValueError(f"empty span {text!r}")
        return list(range(lo, hi + 1))
    return [int(text)]


@dataclass
class ResultRow:
    n: int
    N: int
    L: int
    boundary: str
    lambda_singlet: float
    lambda_adjoint: float
    S: Optional[float] = None
    alpha: Union[float, complex, None] = None
    S_alpha: Union[float, complex, None] = None
    verified: Optional[bool] = None
    max_dev: Optional[float] = None

    def csv_fields(self) -> List[str]:
        s_re = s_im = None
        if self.S_alpha is not None:
            s_re = complex(self.S_alpha).real
            s_im = complex(self.S_alpha).imag
        verified = "" if self.verified is None else ("true" if self.verified else "false")
        return [str(self.n), str(self.N), str(self.L), self.boundary,
                fmt(self.lambda_singlet), fmt(self.lambda_adjoint), fmt(self.S),
                alpha_literal(self.alpha), fmt(s_re), fmt(s_im), verified, fmt(self.max_dev)]

    def json_obj(self) -> dict:
        s_re = s_im = None
        if self.S_alpha is not None:
            s_re = complex(self.S_alpha).real
            s_im = complex(self.S_alpha).imag
        return {
            "n": self.n, "N": self.N, "L": self.L, "boundary": self.boundary,
            "lambda_singlet": self.lambda_singlet, "lambda_adjoint": self.lambda_adjoint,
            "S": self.S, "alpha": alpha_literal(self.alpha) or None,
            "S_alpha_re": s_re, "S_alpha_im": s_im,
            "verified": self.verified, "max_dev": self.max_dev,
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ResultRow":
        alpha = parse_alpha(obj["alpha"]) if obj.get("alpha") else None
        s_alpha = None
        if obj.get("S_alpha_re") is not None:
            s_alpha = complex(obj["S_alpha_re"], obj.get("S_alpha_im") or 0.0)
            if s_alpha.imag == 0.0 and not isinstance(alpha, complex):
                s_alpha = s_alpha.real
        return cls(obj["n"], obj["N"], obj["L"], obj["boundary"],
                   obj["lambda_singlet"], obj["lambda_adjoint"], obj.get("S"),
                   alpha, s_alpha, obj.get("verified"), obj.get("max_dev"))


def _emit(rows: List[List[str]], objs: List[dict], header: List[str], args) -> None:
    if args.format == "json":
        text = json.dumps(objs, indent=2) + "\n"
    else:
        import io
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        text = buf.getvalue()
    if args.out:
        with open(args.out, "w") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _oracle_deviation(n: int, L: int, boundary: str, chain: int,
                      amp_budget: int, matrix_budget: int) -> float:
    """Worst gap between the closed-form weights and a brute-force spectrum."""
    if boundary == states.OPEN:
        spec = states.ChainSpec(n, L, states.OPEN, amp_budget)
        psi = states.open_vbs_state(spec)
        expected = closed_form.open_spectrum(n, L).nonzero()
    else:
        spec = states.ChainSpec(n, chain, states.PERIODIC, amp_budget)
        psi = states.periodic_vbs_state(spec)
        expected = closed_form.periodic_spectrum(n, chain, L).nonzero()
    report = oracle.block_spectrum(psi, range(L), matrix_budget=matrix_budget)
    found = [float(v) for v in report.eigenvalues if v > 1e-12]
    want = sorted((float(v) for v in expected), reverse=True)
    if len(found) != len(want):
        return float("inf")
    return max(abs(a - b) for a, b in zip(found, want))


def _weights_for(args, L: int):
    if args.boundary == states.OPEN:
        if args.chain is not None:
            raise ValueError("--chain only applies to periodic boundaries")
        return closed_form.open_spectrum(args.n, L), -1
    if args.chain is None:
        raise ValueError("--chain is required for periodic boundaries")
    return closed_form.periodic_spectrum(args.n, args.chain, L), args.chain


def cmd_spectrum(args) -> int:
    rows = []
    for L in sorted(parse_span(args.block)):
        spec, N = _weights_for(args, L)
        singlet, adjoint = spec.floats()
        row = ResultRow(args.n, N, L, args.boundary, singlet, adjoint)
        if args.verify:
            dev = _oracle_deviation(args.n, L, args.boundary, args.chain,
                                    args.budget_amps, args.budget_matrix)
            row.verified = dev <= args.tol
            row.max_dev = dev
        rows.append(row)
    _emit([r.csv_fields() for r in rows], [r.json_obj() for r in rows], CSV_HEADER, args)
    return 0


def cmd_entropy(args) -> int:
    alphas = []
    for chunk in args.alpha or []:
        for piece in chunk.split(","):
            if piece:
                alphas.append(parse_alpha(piece))
    base_scale = 1.0
    if args.log_base == "2":
        base_scale = 1.0 / math.log(2.0)
    elif args.log_base == "n":
        base_scale = 1.0 / math.log(args.n)
    rows = []
    for L in sorted(parse_span(args.block)):
        spec, N = _weights_for(args, L)
        singlet, adjoint = spec.floats()
        if args.boundary == states.OPEN:
            entropy = closed_form.open_entropy(args.n, L)
            renyi_of = lambda a, L=L: closed_form.open_renyi(args.n, L, a)
        else:
            entropy = closed_form.periodic_entropy(args.n, args.chain, L)
            renyi_of = lambda a, L=L: closed_form.periodic_renyi(args.n, args.chain, L, a)
        verified = max_dev = None
        if args.verify:
            dev = _oracle_deviation(args.n, L, args.boundary, args.chain,
                                    args.budget_amps, args.budget_matrix)
            verified, max_dev = dev <= args.tol, dev
        base = ResultRow(args.n, N, L, args.boundary, singlet, adjoint,
                         entropy * base_scale, verified=verified, max_dev=max_dev)
        if not alphas:
            rows.append(base)
            continue
        for alpha in alphas:
            row = ResultRow(**vars(base))
            row.alpha = alpha
            try:
                row.S_alpha = renyi_of(alpha) * base_scale
            except BranchPointCondition:
                row.S_alpha = None  # flagged: order sits on a branch point
                print(f"note: order {alpha_literal(alpha)} is a branch point at L={L}",
                      file=sys.stderr)
            rows.append(row)
    _emit([r.csv_fields() for r in rows], [r.json_obj() for r in rows], CSV_HEADER, args)
    return 0


def cmd_branch_points(args) -> int:
    ms = sorted(parse_span(args.m))
    rows = []
    objs = []
    for L in sorted(parse_span(args.block)):
        for point in closed_form.branch_points(args.n, L, ms):
            parity = "even" if point.even_block else "odd"
            rows.append([str(args.n), str(L), str(point.m), f"{point.sign:+d}",
                         fmt(point.alpha.real), fmt(point.alpha.imag),
                         fmt(point.residual), parity])
            objs.append({"n": args.n, "L": L, "m": point.m, "sign": point.sign,
                         "alpha_re": point.alpha.real, "alpha_im": point.alpha.imag,
                         "residual": point.residual, "parity": parity})
    _emit(rows, objs, BRANCH_HEADER, args)
    return 0


def cmd_verify(args) -> int:
    only = args.only or None
    ns = tuple(args.n) if args.n else None
    results = run_checks(only=only, ns=ns,
                         amp_budget=args.budget_amps, matrix_budget=args.budget_matrix)
    lines = [
        f"{r.name}: {'PASS' if r.passed else 'FAIL'}  max_dev={r.max_dev:.3e}  "
        f"tol={r.tolerance:g}  ({r.detail})"
        for r in results
    ]
    summary = {
        "checks": [{"name": r.name, "passed": r.passed, "max_dev": r.max_dev,
                    "tolerance": r.tolerance, "detail": r.detail} for r in results],
        "all_passed": all(r.passed for r in results),
    }
    if args.format == "json" and not args.out:
        json.dump(summary, sys.stdout, indent=2)
        sys.stdout.write("\n")
    else:
        sys.stdout.write("\n".join(lines) + "\n")
        if args.out:
            with open(args.out, "w") as handle:
                json.dump(summary, handle, indent=2)
                handle.write("\n")
    return 0 if summary["all_passed"] else 1


def _add_common(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument("--out", help="write output to this path instead of stdout")
    parser.add_argument("--budget-amps", type=int,
                        default=int(os.environ.get(AMP_BUDGET_ENV, states.DEFAULT_AMP_BUDGET)),
                        help="maximum stored amplitudes per state")
    parser.add_argument("--budget-matrix", type=int,
                        default=int(os.environ.get(MATRIX_BUDGET_ENV, oracle.DEFAULT_MATRIX_BUDGET)),
                        help="maximum materialized matrix dimension")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="vbsent",
                                     description="Valence-bond-solid chain spectra and entropies")
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("spectrum", help="block weights for a chain or ring")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--boundary", choices=(states.OPEN, states.PERIODIC), required=True)
    sp.add_argument("--block", required=True, help="block length L or span lo..hi")
    sp.add_argument("--chain", type=int, help="ring length N (periodic only)")
    sp.add_argument("--verify", action="store_true", help="cross-check against the brute-force route")
    sp.add_argument("--tol", type=float, default=1e-10)
    _add_common(sp)
    sp.set_defaults(func=cmd_spectrum)

    en = sub.add_parser("entropy", help="block entropies, optionally at Renyi orders")
    en.add_argument("--n", type=int, required=True)
    en.add_argument("--boundary", choices=(states.OPEN, states.PERIODIC), required=True)
    en.add_argument("--block", required=True)
    en.add_argument("--chain", type=int)
    en.add_argument("--alpha", action="append",
                    help="Renyi order(s): real or a+bi literals, comma separated or repeated")
    en.add_argument("--log-base", choices=("e", "2", "n"), default="e",
                    help="display base for entropies (computation stays in nats)")
    en.add_argument("--verify", action="store_true")
    en.add_argument("--tol", type=float, default=1e-10)
    _add_common(en)
    en.set_defaults(func=cmd_entropy)

    bp = sub.add_parser("branch-points", help="complex orders where the Renyi power sum vanishes")
    bp.add_argument("--n", type=int, required=True)
    bp.add_argument("--block", required=True, help="block length L or span lo..hi (L >= 2)")
    bp.add_argument("--m", default="0..2", help="branch integer or span, both signs enumerated")
    _add_common(bp)
    bp.set_defaults(func=cmd_branch_points)

    ve = sub.add_parser("verify", help="run the oracle-vs-closed-form verification grid")
    ve.add_argument("--n", type=int, action="append", help="restrict the grid to these n")
    ve.add_argument("--only", action="append", choices=sorted(CHECKS),
                    help="run only the named check(s)")
    _add_common(ve)
    ve.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, ArithmeticError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
